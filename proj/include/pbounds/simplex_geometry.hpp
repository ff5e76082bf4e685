#pragma once

#include "pbounds/dense_matrix.hpp"
#include "pbounds/numeric_types.hpp"

#include <array>
#include <string>
#include <vector>

namespace pbounds {

/// Default number of significant decimal digits used when rationalizing coordinates.
inline constexpr int kDefaultRationalDigits = 30;

template <int D>
using Point = std::array<double, D>;

template <int D>
using RationalPoint = std::array<Rational, D>;

/// Simplex with rational vertex coordinates. Vertex order follows the parametric
/// description, so the distinguished face Gamma is spanned by the first D vertices.
template <int D>
struct RationalSimplex {
    std::array<RationalPoint<D>, D + 1> vertices;
};

/// Triangle A=(0,0), B=(h,0), C=(h*rho*cos(alpha), h*rho*sin(alpha)); Gamma = AB.
class Triangle2D {
public:
    Triangle2D(double h, double rho, double alpha);

    [[nodiscard]] double h() const { return h_; }
    [[nodiscard]] double rho() const { return rho_; }
    [[nodiscard]] double alpha() const { return alpha_; }

    [[nodiscard]] std::array<Point<2>, 3> vertices() const;
    /// Coordinates below 1e-14 of the longest given side are snapped to zero.
    [[nodiscard]] RationalSimplex<2> rationalized(int digits = kDefaultRationalDigits) const;
    [[nodiscard]] double area() const;

private:
    double h_;
    double rho_;
    double alpha_;
};

/// Tetrahedron A=0, B=(h1,0,0), C=(0,0,h3),
/// D=(h2 sin(theta) cos(alpha), h2 sin(theta) sin(alpha), h2 cos(theta)); Gamma = ABC.
class Tetrahedron3D {
public:
    Tetrahedron3D(double h1, double h2, double h3, double alpha, double theta);

    [[nodiscard]] double h1() const { return h1_; }
    [[nodiscard]] double h2() const { return h2_; }
    [[nodiscard]] double h3() const { return h3_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double theta() const { return theta_; }
    /// Length ratio h2/h1.
    [[nodiscard]] double rho() const { return h2_ / h1_; }

    [[nodiscard]] std::array<Point<3>, 4> vertices() const;
    [[nodiscard]] RationalSimplex<3> rationalized(int digits = kDefaultRationalDigits) const;
    [[nodiscard]] double volume() const;

private:
    double h1_;
    double h2_;
    double h3_;
    double alpha_;
    double theta_;
};

enum class ReferenceAngle { Pi4, Pi3, Pi2, TwoPi3 };

/// Selects one reference simplex with unit scaling.
struct ReferenceTag {
    int dimension = 2;
    ReferenceAngle angle = ReferenceAngle::Pi2;

    [[nodiscard]] double radians() const;
    [[nodiscard]] std::string label() const;
    friend bool operator==(const ReferenceTag&, const ReferenceTag&) = default;
};

/// The three planar references and the four spatial ones.
std::vector<ReferenceTag> reference_tags(int dimension);

/// Vertices of a reference simplex, in the same order as the target vertices.
std::vector<std::vector<double>> reference_vertices(const ReferenceTag& tag);

/// Linear map x = B xhat taking a reference simplex onto a target.
struct AffineMap {
    Matrix<double> matrix;
    double determinant = 0.0;

    [[nodiscard]] std::vector<double> apply(const std::vector<double>& x) const;
};

AffineMap affine_map_2d(const Triangle2D& target, const ReferenceTag& ref);
AffineMap affine_map_3d(const Tetrahedron3D& target, const ReferenceTag& ref);

struct SimplexMetrics {
    double diameter = 0.0;
    double perimeter_or_surface = 0.0;
    double area_or_volume = 0.0;
    std::vector<double> edge_lengths;
};

SimplexMetrics metrics(const Triangle2D& t);
SimplexMetrics metrics(const Tetrahedron3D& t);
/// Metrics of a triangle given by arbitrary vertices.
SimplexMetrics triangle_metrics(const std::array<Point<2>, 3>& vertices);

} // namespace pbounds
