#pragma once

#include "pbounds/numeric_types.hpp"
#include "pbounds/polynomial.hpp"
#include "pbounds/simplex_geometry.hpp"

#include <array>
#include <functional>
#include <vector>

namespace pbounds {

/// Integral of prod x_k^{e_k} over the unit simplex of dimension e.size() (1, 2 or 3):
/// prod(e_k!) / (sum(e_k) + d)!.
Rational monomial_integral_unit_simplex(const std::vector<int>& exponents);

/// Exact integral of a polynomial over a simplex with rational vertices.
template <int D>
Rational integrate_polynomial(const Polynomial<D>& p, const RationalSimplex<D>& simplex);

/// Exact integral over the distinguished face Gamma (first D vertices). Gamma must be the
/// segment [0, h] on the x-axis (2D) or a right triangle at the origin in the plane y = 0 (3D).
template <int D>
Rational integrate_over_gamma(const Polynomial<D>& p, const RationalSimplex<D>& simplex);

/// Mean value of p along the segment from a to b, i.e. the integral over [0,1] of p(a + t(b-a)).
Rational segment_mean(const Polynomial<2>& p, const RationalPoint<2>& a, const RationalPoint<2>& b);

/// Exact integrals of all monomials x^a y^b (z^c) with every exponent <= max_exponent over a
/// simplex whose first vertex is the origin.
template <int D>
class MomentTable {
public:
    MomentTable(const RationalSimplex<D>& simplex, int max_exponent);

    [[nodiscard]] int max_exponent() const { return max_exponent_; }
    /// Returns zero when any exponent is negative.
    [[nodiscard]] const Rational& operator()(const std::array<int, D>& e) const;

private:
    int max_exponent_;
    std::vector<Rational> values_;
    Rational zero_{0};
};

/// Quadrature rule on the reference triangle (0,0),(1,0),(0,1).
struct QuadratureRule {
    std::vector<std::array<double, 3>> barycentric;
    std::vector<double> weights;   ///< sum to 1/2
    int degree = 0;
};

/// Collapsed Gauss-Legendre product rule exact for total degree <= `degree`.
QuadratureRule triangle_rule(int degree);

/// Gauss-Legendre nodes and weights on [0, 1] exact for degree <= `degree`.
std::pair<std::vector<double>, std::vector<double>> interval_rule(int degree);

struct WeightedPoints {
    std::vector<Point<2>> points;
    std::vector<double> weights;
};

/// Physical points of `rule` applied on each of the 4^level uniform sub-triangles.
WeightedPoints triangle_points(const std::array<Point<2>, 3>& triangle, const QuadratureRule& rule,
                               int level);

struct QuadratureOptions {
    double relative_tolerance = 1e-12;
    int max_level = 8;
};

struct QuadratureResult {
    double value = 0.0;
    int level = 0;
};

/// Integrates a smooth function over a triangle, refining uniformly until two successive
/// levels agree. Throws NumericalError when max_level is reached.
QuadratureResult quadrature_integrate(const std::function<double(double, double)>& f,
                                      const std::array<Point<2>, 3>& triangle, int degree,
                                      const QuadratureOptions& options = {});

/// Same on a segment, refining by bisection (2^level pieces).
QuadratureResult segment_quadrature(const std::function<double(double, double)>& f, const Point<2>& a,
                                    const Point<2>& b, int degree, const QuadratureOptions& options = {});

extern template Rational integrate_polynomial<1>(const Polynomial<1>&, const RationalSimplex<1>&);
extern template Rational integrate_polynomial<2>(const Polynomial<2>&, const RationalSimplex<2>&);
extern template Rational integrate_polynomial<3>(const Polynomial<3>&, const RationalSimplex<3>&);
extern template Rational integrate_over_gamma<2>(const Polynomial<2>&, const RationalSimplex<2>&);
extern template Rational integrate_over_gamma<3>(const Polynomial<3>&, const RationalSimplex<3>&);
extern template class MomentTable<2>;
extern template class MomentTable<3>;

} // namespace pbounds
