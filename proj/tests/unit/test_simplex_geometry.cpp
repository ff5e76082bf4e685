#include "pbounds/simplex_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pbounds;
using std::numbers::pi;

TEST(Triangle2D, RejectsDegenerateInput)
{
    EXPECT_THROW(Triangle2D(0.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Triangle2D(1.0, -1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Triangle2D(1.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(Triangle2D(1.0, 1.0, pi), std::invalid_argument);
}

TEST(Triangle2D, RightIsoscelesVertices)
{
    const auto v = Triangle2D(1.0, 1.0, pi / 2).vertices();
    EXPECT_DOUBLE_EQ(v[1][0], 1.0);
    EXPECT_NEAR(v[2][0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(v[2][1], 1.0);
}

TEST(Triangle2D, HypotenuseReferenceVertices)
{
    const auto v = Triangle2D(1.0, std::sqrt(0.5), pi / 4).vertices();
    EXPECT_NEAR(v[2][0], 0.5, 1e-15);
    EXPECT_NEAR(v[2][1], 0.5, 1e-15);
}

TEST(Triangle2D, RationalizedVerticesAreClose)
{
    const Triangle2D t(1.3, 0.7, 1.1);
    const auto r = t.rationalized(30);
    const auto v = t.vertices();
    for (int k = 0; k < 3; ++k) {
        for (int d = 0; d < 2; ++d) {
            EXPECT_NEAR(r.vertices[k][d].get_d(), v[k][d], 1e-15);
        }
    }
    EXPECT_EQ(r.vertices[0][0], 0);
    EXPECT_EQ(r.vertices[1][1], 0);
}

TEST(Tetrahedron3D, ReferenceVertices)
{
    const auto v = Tetrahedron3D(1, 1, 1, pi / 2, pi / 2).vertices();
    EXPECT_DOUBLE_EQ(v[1][0], 1.0);
    EXPECT_DOUBLE_EQ(v[2][2], 1.0);
    EXPECT_NEAR(v[3][0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(v[3][1], 1.0);
    EXPECT_NEAR(v[3][2], 0.0, 1e-16);
}

TEST(Tetrahedron3D, ThirdCoordinateUsesTheta)
{
    const auto v = Tetrahedron3D(1, 2, 1, pi / 3, pi / 6).vertices();
    EXPECT_NEAR(v[3][2], 2.0 * std::cos(pi / 6), 1e-15);
    EXPECT_NEAR(v[3][0], 2.0 * std::sin(pi / 6) * std::cos(pi / 3), 1e-15);
    EXPECT_GT(Tetrahedron3D(1, 2, 1, pi / 3, pi / 6).volume(), 0.0);
}

TEST(Tetrahedron3D, RejectsDegenerateInput)
{
    EXPECT_THROW(Tetrahedron3D(1, 1, 1, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Tetrahedron3D(1, 1, 1, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(Tetrahedron3D(1, 0, 1, 1.0, 1.0), std::invalid_argument);
}

TEST(AffineMap2D, IdentityOnReferences)
{
    for (auto [rho, alpha, angle] : {std::tuple{1.0, pi / 2, ReferenceAngle::Pi2},
                                     std::tuple{std::sqrt(0.5), pi / 4, ReferenceAngle::Pi4},
                                     std::tuple{1.0, pi / 3, ReferenceAngle::Pi3}}) {
        const auto m = affine_map_2d(Triangle2D(1.0, rho, alpha), ReferenceTag{2, angle});
        EXPECT_NEAR(m.determinant, 1.0, 1e-14);
        EXPECT_NEAR(m.matrix(0, 0), 1.0, 1e-14);
        EXPECT_NEAR(m.matrix(0, 1), 0.0, 1e-14);
        EXPECT_NEAR(m.matrix(1, 0), 0.0, 1e-14);
        EXPECT_NEAR(m.matrix(1, 1), 1.0, 1e-14);
    }
}

TEST(AffineMap2D, RightTriangleFromHypotenuseReference)
{
    const auto m = affine_map_2d(Triangle2D(1.0, 1.0, pi / 2), ReferenceTag{2, ReferenceAngle::Pi4});
    EXPECT_NEAR(m.matrix(0, 0), 1.0, 1e-14);
    EXPECT_NEAR(m.matrix(0, 1), -1.0, 1e-14);
    EXPECT_NEAR(m.matrix(1, 0), 0.0, 1e-14);
    EXPECT_NEAR(m.matrix(1, 1), 2.0, 1e-14);
    EXPECT_NEAR(m.determinant, 2.0, 1e-14);
}

TEST(AffineMap2D, MapsReferenceVerticesOntoTarget)
{
    const Triangle2D t(1.7, 0.6, 2.1);
    const auto target = t.vertices();
    for (const auto& tag : reference_tags(2)) {
        const auto m = affine_map_2d(t, tag);
        const auto ref = reference_vertices(tag);
        for (std::size_t k = 0; k < 3; ++k) {
            const auto x = m.apply(ref[k]);
            EXPECT_NEAR(x[0], target[k][0], 1e-13);
            EXPECT_NEAR(x[1], target[k][1], 1e-13);
        }
    }
}

TEST(AffineMap3D, Determinants)
{
    EXPECT_NEAR(affine_map_3d(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2), ReferenceTag{3, ReferenceAngle::Pi2}).determinant,
                1.0, 1e-14);
    EXPECT_NEAR(affine_map_3d(Tetrahedron3D(1, 1, 1, pi / 3, pi / 2), ReferenceTag{3, ReferenceAngle::Pi3}).determinant,
                1.0, 1e-14);
    EXPECT_NEAR(affine_map_3d(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2), ReferenceTag{3, ReferenceAngle::Pi4}).determinant,
                std::sqrt(2.0), 1e-14);
}

TEST(AffineMap3D, MapsReferenceVerticesOntoTarget)
{
    const Tetrahedron3D t(1.2, 0.8, 1.5, 2.0, 0.7);
    const auto target = t.vertices();
    for (const auto& tag : reference_tags(3)) {
        const auto m = affine_map_3d(t, tag);
        const auto ref = reference_vertices(tag);
        for (std::size_t k = 0; k < 4; ++k) {
            const auto x = m.apply(ref[k]);
            for (std::size_t d = 0; d < 3; ++d) {
                EXPECT_NEAR(x[d], target[k][d], 1e-13);
            }
        }
    }
}

TEST(Metrics, Triangles)
{
    const auto a = metrics(Triangle2D(1.0, 1.0, pi / 2));
    EXPECT_NEAR(a.diameter, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a.perimeter_or_surface, 2.0 + std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a.area_or_volume, 0.5, 1e-15);
    const auto b = metrics(Triangle2D(1.0, std::sqrt(0.5), pi / 4));
    EXPECT_NEAR(b.diameter, 1.0, 1e-15);
    EXPECT_NEAR(b.area_or_volume, 0.25, 1e-15);
    EXPECT_NEAR(metrics(Triangle2D(2.0, 1.0, pi / 3)).area_or_volume, std::sqrt(3.0), 1e-14);
}

TEST(Metrics, Tetrahedron)
{
    const auto m = metrics(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2));
    EXPECT_NEAR(m.area_or_volume, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(m.diameter, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(m.edge_lengths.size(), 6u);
}
