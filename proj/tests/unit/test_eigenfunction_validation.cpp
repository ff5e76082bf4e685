#include "pbounds/eigenfunction_validation.hpp"
#include "pbounds/exact_integration.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace pbounds;
using std::numbers::pi;

namespace {

const Triangle2D kRight(1.0, 1.0, pi / 2);
const Triangle2D kEquilateral(1.0, 1.0, pi / 3);

ScalarField up() { return [](double x, double y) { return exact_up_leg(x, y); }; }
ScalarField utr() { return [](double x, double y) { return exact_utr_leg(x, y); }; }

} // namespace

TEST(ExactLegFunctions, PointValues)
{
    EXPECT_NEAR(exact_up_leg(0.0, 1.0), 2.0, 1e-15);
    EXPECT_NEAR(exact_up_leg(0.0, 2.0, 2.0), 2.0, 1e-15);
}

TEST(ExactLegFunctions, ZeroMeanOnGamma)
{
    EXPECT_LT(std::abs(field_mean(up(), kRight, ConstantKind::CP_Gamma)), 1e-10);
    EXPECT_LT(std::abs(field_mean(utr(), kRight, ConstantKind::CTr_Gamma)), 1e-10);
    // Closed form of the Gamma integral: sin z / z + cos z vanishes at the root.
    const double z = root_zcot();
    EXPECT_LT(std::abs(std::sin(z) / z + std::cos(z)), 1e-14);
}

TEST(ExactLegFunctions, ReproduceEigenvalues)
{
    const double z = root_zcot(), zh = root_tantanh();
    const double p = rayleigh_eigenvalue(up(), [](double x, double y) { return exact_up_leg_gradient(x, y); }, kRight,
                                         ConstantKind::CP_Gamma);
    EXPECT_NEAR(p, z * z, 1e-8 * z * z);
    const double t = rayleigh_eigenvalue(utr(), [](double x, double y) { return exact_utr_leg_gradient(x, y); },
                                         kRight, ConstantKind::CTr_Gamma);
    EXPECT_NEAR(t, zh * std::tanh(zh), 1e-8);
}

TEST(ExactLegFunctions, SymmetricInShiftedCoordinates)
{
    // Both are symmetric functions of (x, y - h).
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double x = u(rng), y = u(rng);
        EXPECT_NEAR(exact_up_leg(x, y), exact_up_leg(y - 1.0, x + 1.0), 1e-13);
        EXPECT_NEAR(exact_utr_leg(x, y), exact_utr_leg(y - 1.0, x + 1.0), 1e-13);
    }
}

TEST(ExactLegFunctions, GradientsMatchFiniteDifferences)
{
    const double e = 1e-6;
    for (auto [x, y] : {std::pair{0.2, 0.3}, std::pair{0.6, 0.1}}) {
        const auto g = exact_utr_leg_gradient(x, y);
        EXPECT_NEAR(g[0], (exact_utr_leg(x + e, y) - exact_utr_leg(x - e, y)) / (2 * e), 1e-7);
        EXPECT_NEAR(g[1], (exact_utr_leg(x, y + e) - exact_utr_leg(x, y - e)) / (2 * e), 1e-7);
        const auto h = exact_up_leg_gradient(x, y);
        EXPECT_NEAR(h[1], (exact_up_leg(x, y + e) - exact_up_leg(x, y - e)) / (2 * e), 1e-7);
    }
}

TEST(EquilateralPair, SymmetryLineAndMeans)
{
    for (double y : {0.1, 0.4, 0.8}) {
        EXPECT_NEAR(mccartin_pair(0.5, y).second, 0.0, 1e-15);
    }
    const ScalarField u1 = [](double x, double y) { return mccartin_pair(x, y).first; };
    const ScalarField u2 = [](double x, double y) { return mccartin_pair(x, y).second; };
    EXPECT_LT(std::abs(field_mean(u1, kEquilateral, ConstantKind::CP_T)), 1e-10);
    EXPECT_LT(std::abs(field_mean(u2, kEquilateral, ConstantKind::CP_T)), 1e-10);
}

TEST(EquilateralPair, EigenvalueAndOrthogonality)
{
    const double exact = 16 * pi * pi / 9;   // (4 pi / 3)^2
    const ScalarField u1 = [](double x, double y) { return mccartin_pair(x, y).first; };
    const ScalarField u2 = [](double x, double y) { return mccartin_pair(x, y).second; };
    const GradientField g1 = [](double x, double y) { return mccartin_pair_gradient(x, y).first; };
    const GradientField g2 = [](double x, double y) { return mccartin_pair_gradient(x, y).second; };
    EXPECT_NEAR(rayleigh_eigenvalue(u1, g1, kEquilateral, ConstantKind::CP_T), exact, 1e-8);
    EXPECT_NEAR(rayleigh_eigenvalue(u2, g2, kEquilateral, ConstantKind::CP_T), exact, 1e-8);
    const auto product = quadrature_integrate([&](double x, double y) { return u1(x, y) * u2(x, y); },
                                              kEquilateral.vertices(), 16);
    EXPECT_LT(std::abs(product.value), 1e-10);
}

TEST(EquilateralPair, NormalDerivativeVanishesOnBoundary)
{
    const double s3 = std::sqrt(3.0);
    for (double t : {0.1, 0.35, 0.6, 0.9}) {
        // bottom edge y = 0, normal (0, -1)
        for (int k = 0; k < 2; ++k) {
            const auto g = k == 0 ? mccartin_pair_gradient(t, 0.0).first : mccartin_pair_gradient(t, 0.0).second;
            EXPECT_NEAR(g[1], 0.0, 1e-12);
        }
        // left edge from (0,0) to (1/2, sqrt3/2), outward normal (-sqrt3/2, 1/2)
        const double x = 0.5 * t, y = 0.5 * s3 * t;
        const auto g = mccartin_pair_gradient(x, y).first;
        EXPECT_NEAR(-0.5 * s3 * g[0] + 0.5 * g[1], 0.0, 1e-12);
    }
}

TEST(Compare, ComputedAgainstExact)
{
    const auto f = assemble(kRight, BasisSpec{BasisFamily::Monomial, 6, 2});
    const auto cp = lower_bound(f, ConstantKind::CP_Gamma);
    const auto ctr = lower_bound(f, ConstantKind::CTr_Gamma);
    EXPECT_LT(compare(cp, up(), kRight), 1e-3);
    EXPECT_LT(compare(ctr, utr(), kRight), 1e-3);
    EXPECT_GT(compare(cp, utr(), kRight), 0.1);
    EXPECT_NEAR(compare_fields(up(), up(), kRight, 12), 0.0, 1e-12);
    // Sign invariance.
    EXPECT_NEAR(compare_fields([](double x, double y) { return -exact_up_leg(x, y); }, up(), kRight, 12), 0.0, 1e-12);
}

TEST(Sampling, LatticeSizesAndGeometry)
{
    const auto r = lower_bound(kRight, BasisSpec{BasisFamily::Monomial, 2, 2}, ConstantKind::CP_Gamma);
    const auto s2 = sample_barycentric(r, kRight, 2);
    EXPECT_EQ(s2.points.size(), 6u);
    EXPECT_EQ(sample_barycentric(r, kRight, 20).points.size(), 231u);
    const Triangle2D t(1.0, 0.8, 2.0);
    const auto rt = lower_bound(t, BasisSpec{BasisFamily::Monomial, 2, 2}, ConstantKind::CP_T);
    const auto s = sample_barycentric(rt, t, 7);
    const auto v = t.vertices();
    double vmax = 0.0;
    for (const auto& p : s.points) {
        const double sum = p.barycentric[0] + p.barycentric[1] + p.barycentric[2];
        EXPECT_NEAR(sum, 1.0, 1e-15);
        for (double l : p.barycentric) {
            EXPECT_GE(l, -1e-15);
        }
        const double x = p.barycentric[0] * v[0][0] + p.barycentric[1] * v[1][0] + p.barycentric[2] * v[2][0];
        EXPECT_NEAR(x, p.cartesian[0], 1e-14);
        vmax = std::max(vmax, std::abs(p.value));
    }
    EXPECT_NEAR(vmax, 1.0, 1e-15);
}

TEST(Sampling, RejectsVanishingField)
{
    auto r = lower_bound(kRight, BasisSpec{BasisFamily::Monomial, 1, 2}, ConstantKind::CP_T);
    std::fill(r.coefficients.begin(), r.coefficients.end(), 0.0);
    EXPECT_THROW(sample_barycentric(r, kRight, 4), std::invalid_argument);
    EXPECT_THROW(sample_field(up(), kRight, 1), std::invalid_argument);
}

TEST(Sampling, CsvFormat)
{
    const auto s = sample_field(up(), kRight, 3, Normalization::L2Unit);
    const std::string csv = to_csv(s);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "l1,l2,l3,x,y,value");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 10);
}

TEST(Crossings, NoDropAwayFromTheEquilateralShape)
{
    std::vector<double> grid;
    for (int k = 0; k < 6; ++k) {
        grid.push_back(1.2 + 0.05 * k);
    }
    const auto rep = detect_crossings(1.0, 1.5, grid, BasisSpec{BasisFamily::Monomial, 4, 2});
    EXPECT_EQ(rep.steps.size(), grid.size() - 1);
    EXPECT_TRUE(rep.drops().empty());
}
