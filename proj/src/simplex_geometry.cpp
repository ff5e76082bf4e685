#include "pbounds/simplex_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbounds {

namespace {

// cos(pi/2) evaluates to 6e-17 in double; snapping such residues keeps the reference shapes exact.
constexpr double kSnapToZero = 1e-14;

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

void require_open_angle(double v, const char* name)
{
    if (!(v > 0.0 && v < std::numbers::pi)) {
        throw std::invalid_argument(std::string(name) + " must lie in the open interval (0, pi)");
    }
}

double distance(const double* a, const double* b, int d)
{
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        s += (a[k] - b[k]) * (a[k] - b[k]);
    }
    return std::sqrt(s);
}

} // namespace

Triangle2D::Triangle2D(double h, double rho, double alpha) : h_(h), rho_(rho), alpha_(alpha)
{
    require_positive(h, "h");
    require_positive(rho, "rho");
    require_open_angle(alpha, "alpha");
    if (!(area() > 0.0)) {
        throw std::invalid_argument("degenerate triangle");
    }
}

std::array<Point<2>, 3> Triangle2D::vertices() const
{
    return {Point<2>{0.0, 0.0}, Point<2>{h_, 0.0},
            Point<2>{h_ * rho_ * std::cos(alpha_), h_ * rho_ * std::sin(alpha_)}};
}

RationalSimplex<2> Triangle2D::rationalized(int digits) const
{
    RationalSimplex<2> s;
    const auto v = vertices();
    const double tiny = kSnapToZero * std::max(h_, h_ * rho_);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            s.vertices[i][k] = std::abs(v[i][k]) < tiny ? Rational(0) : rationalize(v[i][k], digits);
        }
    }
    return s;
}

double Triangle2D::area() const { return 0.5 * h_ * h_ * rho_ * std::sin(alpha_); }

Tetrahedron3D::Tetrahedron3D(double h1, double h2, double h3, double alpha, double theta)
    : h1_(h1), h2_(h2), h3_(h3), alpha_(alpha), theta_(theta)
{
    require_positive(h1, "h1");
    require_positive(h2, "h2");
    require_positive(h3, "h3");
    require_open_angle(alpha, "alpha");
    require_open_angle(theta, "theta");
    if (!(volume() > 0.0)) {
        throw std::invalid_argument("degenerate tetrahedron");
    }
}

std::array<Point<3>, 4> Tetrahedron3D::vertices() const
{
    const double st = std::sin(theta_);
    return {Point<3>{0.0, 0.0, 0.0}, Point<3>{h1_, 0.0, 0.0}, Point<3>{0.0, 0.0, h3_},
            Point<3>{h2_ * st * std::cos(alpha_), h2_ * st * std::sin(alpha_), h2_ * std::cos(theta_)}};
}

RationalSimplex<3> Tetrahedron3D::rationalized(int digits) const
{
    RationalSimplex<3> s;
    const auto v = vertices();
    const double tiny = kSnapToZero * std::max({h1_, h2_, h3_});
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            s.vertices[i][k] = std::abs(v[i][k]) < tiny ? Rational(0) : rationalize(v[i][k], digits);
        }
    }
    return s;
}

double Tetrahedron3D::volume() const
{
    return h1_ * h2_ * h3_ * std::sin(alpha_) * std::sin(theta_) / 6.0;
}

double ReferenceTag::radians() const
{
    using std::numbers::pi;
    switch (angle) {
    case ReferenceAngle::Pi4: return pi / 4;
    case ReferenceAngle::Pi3: return pi / 3;
    case ReferenceAngle::Pi2: return pi / 2;
    case ReferenceAngle::TwoPi3: return 2 * pi / 3;
    }
    return 0.0;
}

std::string ReferenceTag::label() const
{
    switch (angle) {
    case ReferenceAngle::Pi4: return "pi/4";
    case ReferenceAngle::Pi3: return "pi/3";
    case ReferenceAngle::Pi2: return "pi/2";
    case ReferenceAngle::TwoPi3: return "2pi/3";
    }
    return "?";
}

std::vector<ReferenceTag> reference_tags(int dimension)
{
    if (dimension == 2) {
        return {{2, ReferenceAngle::Pi4}, {2, ReferenceAngle::Pi3}, {2, ReferenceAngle::Pi2}};
    }
    if (dimension == 3) {
        return {{3, ReferenceAngle::Pi4}, {3, ReferenceAngle::Pi3}, {3, ReferenceAngle::Pi2},
                {3, ReferenceAngle::TwoPi3}};
    }
    throw std::invalid_argument("reference_tags: dimension must be 2 or 3");
}

std::vector<std::vector<double>> reference_vertices(const ReferenceTag& tag)
{
    if (tag.dimension == 2) {
        switch (tag.angle) {
        case ReferenceAngle::Pi4: return {{0, 0}, {1, 0}, {0.5, 0.5}};
        case ReferenceAngle::Pi3: return {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
        case ReferenceAngle::Pi2: return {{0, 0}, {1, 0}, {0, 1}};
        case ReferenceAngle::TwoPi3: break;
        }
        throw std::invalid_argument("2D reference angle must be pi/4, pi/3 or pi/2");
    }
    if (tag.dimension == 3) {
        const double a = tag.radians();
        if (tag.angle == ReferenceAngle::Pi2) {
            return {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
        }
        return {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {std::cos(a), std::sin(a), 0}};
    }
    throw std::invalid_argument("reference dimension must be 2 or 3");
}

std::vector<double> AffineMap::apply(const std::vector<double>& x) const
{
    std::vector<double> y(matrix.rows(), 0.0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            y[i] += matrix(i, j) * x[j];
        }
    }
    return y;
}

AffineMap affine_map_2d(const Triangle2D& target, const ReferenceTag& ref)
{
    if (ref.dimension != 2) {
        throw std::invalid_argument("affine_map_2d: reference must be planar");
    }
    // B has first column (h, 0); the second column sends the reference apex onto C.
    const double h = target.h();
    const double cx = h * target.rho() * std::cos(target.alpha());
    const double cy = h * target.rho() * std::sin(target.alpha());
    const auto rv = reference_vertices(ref);
    const double px = rv[2][0];
    const double py = rv[2][1];
    AffineMap map;
    map.matrix = Matrix<double>(2, 2);
    map.matrix(0, 0) = h;
    map.matrix(1, 0) = 0.0;
    map.matrix(0, 1) = (cx - px * h) / py;
    map.matrix(1, 1) = cy / py;
    map.determinant = h * cy / py;
    return map;
}

AffineMap affine_map_3d(const Tetrahedron3D& target, const ReferenceTag& ref)
{
    if (ref.dimension != 3) {
        throw std::invalid_argument("affine_map_3d: reference must be spatial");
    }
    // Columns: B, (D - cos(ahat) B) / sin(ahat), C.
    const auto v = target.vertices();
    const double ahat = ref.radians();
    const double ca = ref.angle == ReferenceAngle::Pi2 ? 0.0 : std::cos(ahat);
    const double sa = ref.angle == ReferenceAngle::Pi2 ? 1.0 : std::sin(ahat);
    AffineMap map;
    map.matrix = Matrix<double>(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        map.matrix(i, 0) = v[1][i];
        map.matrix(i, 1) = (v[3][i] - ca * v[1][i]) / sa;
        map.matrix(i, 2) = v[2][i];
    }
    map.determinant = target.h1() * target.h2() * target.h3() * std::sin(target.alpha()) *
                      std::sin(target.theta()) / sa;
    return map;
}

SimplexMetrics triangle_metrics(const std::array<Point<2>, 3>& v)
{
    SimplexMetrics m;
    const std::array<std::pair<int, int>, 3> edges{{{0, 1}, {1, 2}, {2, 0}}};
    for (auto [a, b] : edges) {
        m.edge_lengths.push_back(distance(v[static_cast<std::size_t>(a)].data(), v[static_cast<std::size_t>(b)].data(), 2));
    }
    m.diameter = *std::max_element(m.edge_lengths.begin(), m.edge_lengths.end());
    for (double e : m.edge_lengths) {
        m.perimeter_or_surface += e;
    }
    m.area_or_volume = 0.5 * std::abs((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
                                      (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]));
    return m;
}

SimplexMetrics metrics(const Triangle2D& t)
{
    SimplexMetrics m = triangle_metrics(t.vertices());
    m.area_or_volume = t.area();
    return m;
}

SimplexMetrics metrics(const Tetrahedron3D& t)
{
    const auto v = t.vertices();
    SimplexMetrics m;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            m.edge_lengths.push_back(distance(v[i].data(), v[j].data(), 3));
        }
    }
    m.diameter = *std::max_element(m.edge_lengths.begin(), m.edge_lengths.end());
    const std::array<std::array<int, 3>, 4> faces{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    for (const auto& f : faces) {
        const auto& a = v[static_cast<std::size_t>(f[0])];
        const auto& b = v[static_cast<std::size_t>(f[1])];
        const auto& c = v[static_cast<std::size_t>(f[2])];
        const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
        const double wx = c[0] - a[0], wy = c[1] - a[1], wz = c[2] - a[2];
        const double nx = uy * wz - uz * wy, ny = uz * wx - ux * wz, nz = ux * wy - uy * wx;
        m.perimeter_or_surface += 0.5 * std::sqrt(nx * nx + ny * ny + nz * nz);
    }
    m.area_or_volume = t.volume();
    return m;
}

} // namespace pbounds
