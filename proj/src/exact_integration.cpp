#include "pbounds/exact_integration.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace pbounds {

namespace {

const mpz_class& factorial(int n)
{
    static std::vector<mpz_class> cache{mpz_class(1)};
    static std::mutex guard;
    if (n < 0) {
        throw std::invalid_argument("factorial of a negative number");
    }
    std::lock_guard<std::mutex> lock(guard);
    while (static_cast<int>(cache.size()) <= n) {
        cache.push_back(cache.back() * static_cast<unsigned long>(cache.size()));
    }
    return cache[static_cast<std::size_t>(n)];
}

template <int D>
Rational unit_integral(const std::array<int, D>& e)
{
    mpz_class num(1);
    int total = D;
    for (int k : e) {
        num *= factorial(k);
        total += k;
    }
    Rational q(num, factorial(total));
    q.canonicalize();
    return q;
}

template <int D>
Rational determinant(const std::array<std::array<Rational, D>, D>& m)
{
    if constexpr (D == 1) {
        return m[0][0];
    } else if constexpr (D == 2) {
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
}

/// Affine pullback x_k = v0_k + sum_j (v_{j+1} - v0)_k s_j and the Jacobian determinant.
template <int D>
std::pair<std::array<Polynomial<D>, D>, Rational> pullback(const RationalSimplex<D>& simplex)
{
    std::array<Polynomial<D>, D> sub;
    std::array<std::array<Rational, D>, D> jac;
    const auto& v0 = simplex.vertices[0];
    for (std::size_t k = 0; k < D; ++k) {
        sub[k] = Polynomial<D>(v0[k]);
        for (std::size_t j = 0; j < D; ++j) {
            jac[k][j] = simplex.vertices[j + 1][k] - v0[k];
            sub[k] += Polynomial<D>::variable(static_cast<int>(j)) * jac[k][j];
        }
    }
    return {sub, determinant<D>(jac)};
}

template <int D>
Rational integrate_unit(const Polynomial<D>& p)
{
    Rational sum(0);
    for (const auto& [e, c] : p.terms()) {
        sum += c * unit_integral<D>(e);
    }
    return sum;
}

template <std::size_t... I>
std::pair<std::vector<double>, std::vector<double>> gauss_nodes(std::size_t n, std::index_sequence<I...>)
{
    std::pair<std::vector<double>, std::vector<double>> out;
    auto fill = [&](auto tag) {
        constexpr std::size_t N = decltype(tag)::value;
        using G = boost::math::quadrature::gauss<double, N>;
        const auto& x = G::abscissa();
        const auto& w = G::weights();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                out.first.push_back(0.5);
                out.second.push_back(0.5 * w[i]);
            } else {
                out.first.push_back(0.5 * (1.0 - x[i]));
                out.second.push_back(0.5 * w[i]);
                out.first.push_back(0.5 * (1.0 + x[i]));
                out.second.push_back(0.5 * w[i]);
            }
        }
    };
    const bool found = ((n == I + 1 ? (fill(std::integral_constant<std::size_t, I + 1>{}), true) : false) || ...);
    if (!found) {
        throw std::invalid_argument("interval_rule: degree too high");
    }
    return out;
}

using Tri = std::array<Point<2>, 3>;

std::vector<Tri> subdivide(const Tri& t, int level)
{
    std::vector<Tri> current{t};
    for (int l = 0; l < level; ++l) {
        std::vector<Tri> next;
        next.reserve(current.size() * 4);
        for (const auto& tri : current) {
            auto mid = [](const Point<2>& a, const Point<2>& b) {
                return Point<2>{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
            };
            const Point<2> m01 = mid(tri[0], tri[1]);
            const Point<2> m12 = mid(tri[1], tri[2]);
            const Point<2> m20 = mid(tri[2], tri[0]);
            next.push_back({tri[0], m01, m20});
            next.push_back({m01, tri[1], m12});
            next.push_back({m20, m12, tri[2]});
            next.push_back({m01, m12, m20});
        }
        current = std::move(next);
    }
    return current;
}

} // namespace

Rational monomial_integral_unit_simplex(const std::vector<int>& exponents)
{
    for (int e : exponents) {
        if (e < 0) {
            throw std::invalid_argument("monomial_integral_unit_simplex: negative exponent");
        }
    }
    switch (exponents.size()) {
    case 1: return unit_integral<1>({exponents[0]});
    case 2: return unit_integral<2>({exponents[0], exponents[1]});
    case 3: return unit_integral<3>({exponents[0], exponents[1], exponents[2]});
    default: throw std::invalid_argument("monomial_integral_unit_simplex: dimension must be 1, 2 or 3");
    }
}

template <int D>
Rational integrate_polynomial(const Polynomial<D>& p, const RationalSimplex<D>& simplex)
{
    auto [sub, det] = pullback<D>(simplex);
    return integrate_unit<D>(compose<D, D>(p, sub)) * abs(det);
}

template <int D>
Rational integrate_over_gamma(const Polynomial<D>& p, const RationalSimplex<D>& simplex)
{
    const auto& v = simplex.vertices;
    if constexpr (D == 2) {
        if (v[0][0] != 0 || v[0][1] != 0 || v[1][1] != 0 || !(v[1][0] > 0)) {
            throw std::invalid_argument("integrate_over_gamma: Gamma must be [0,h] on the x-axis");
        }
        const Rational& h = v[1][0];
        Rational sum(0);
        for (const auto& [e, c] : p.terms()) {
            if (e[1] != 0) {
                continue;
            }
            Rational hp(1);
            for (int k = 0; k <= e[0]; ++k) {
                hp *= h;
            }
            sum += c * hp / (e[0] + 1);
        }
        return sum;
    } else if constexpr (D == 3) {
        const bool ok = v[0][0] == 0 && v[0][1] == 0 && v[0][2] == 0 && v[1][0] > 0 && v[1][1] == 0 &&
                        v[1][2] == 0 && v[2][0] == 0 && v[2][1] == 0 && v[2][2] > 0;
        if (!ok) {
            throw std::invalid_argument("integrate_over_gamma: Gamma must be the right triangle ABC in y = 0");
        }
        const Rational& h1 = v[1][0];
        const Rational& h3 = v[2][2];
        Rational sum(0);
        for (const auto& [e, c] : p.terms()) {
            if (e[1] != 0) {
                continue;
            }
            Rational scale(1);
            for (int k = 0; k <= e[0]; ++k) {
                scale *= h1;
            }
            for (int k = 0; k <= e[2]; ++k) {
                scale *= h3;
            }
            sum += c * scale * unit_integral<2>({e[0], e[2]});
        }
        return sum;
    } else {
        throw std::invalid_argument("integrate_over_gamma: dimension must be 2 or 3");
    }
}

Rational segment_mean(const Polynomial<2>& p, const RationalPoint<2>& a, const RationalPoint<2>& b)
{
    std::array<Polynomial<1>, 2> sub;
    for (std::size_t k = 0; k < 2; ++k) {
        sub[k] = Polynomial<1>(a[k]) + Polynomial<1>::variable(0) * Rational(b[k] - a[k]);
    }
    const Polynomial<1> q = compose<2, 1>(p, sub);
    Rational sum(0);
    for (const auto& [e, c] : q.terms()) {
        sum += c / (e[0] + 1);
    }
    return sum;
}

template <int D>
MomentTable<D>::MomentTable(const RationalSimplex<D>& simplex, int max_exponent) : max_exponent_(max_exponent)
{
    if (max_exponent < 0) {
        throw std::invalid_argument("MomentTable: negative degree");
    }
    const auto [sub, det_signed] = pullback<D>(simplex);
    const Rational det = abs(det_signed);
    const auto n = static_cast<std::size_t>(max_exponent + 1);
    std::array<std::vector<Polynomial<D>>, D> powers;
    for (std::size_t k = 0; k < D; ++k) {
        powers[k].emplace_back(Rational(1));
        for (std::size_t i = 1; i < n; ++i) {
            powers[k].push_back(powers[k].back() * sub[k]);
        }
    }
    // Unit-simplex integrals indexed by pulled-back exponents.
    const int top = D * max_exponent;
    const auto span = static_cast<std::size_t>(top + 1);
    std::size_t table_size = 1;
    for (int k = 0; k < D; ++k) {
        table_size *= span;
    }
    std::vector<Rational> unit(table_size);
    auto unit_index = [&](const std::array<int, D>& e) {
        std::size_t idx = 0;
        for (int k = 0; k < D; ++k) {
            idx = idx * span + static_cast<std::size_t>(e[static_cast<std::size_t>(k)]);
        }
        return idx;
    };
    std::vector<bool> have(table_size, false);
    auto lookup = [&](const std::array<int, D>& e) -> const Rational& {
        const std::size_t idx = unit_index(e);
        if (!have[idx]) {
            unit[idx] = unit_integral<D>(e);
            have[idx] = true;
        }
        return unit[idx];
    };

    std::size_t total = 1;
    for (int k = 0; k < D; ++k) {
        total *= n;
    }
    values_.assign(total, Rational(0));
    if constexpr (D == 2) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                Rational sum(0);
                for (const auto& [ea, ca] : powers[0][a].terms()) {
                    for (const auto& [eb, cb] : powers[1][b].terms()) {
                        sum += ca * cb * lookup({ea[0] + eb[0], ea[1] + eb[1]});
                    }
                }
                values_[a * n + b] = sum * det;
            }
        }
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const Polynomial<D> ab = powers[0][a] * powers[1][b];
                for (std::size_t c = 0; c < n; ++c) {
                    Rational sum(0);
                    for (const auto& [e1, c1] : ab.terms()) {
                        for (const auto& [e2, c2] : powers[2][c].terms()) {
                            sum += c1 * c2 * lookup({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]});
                        }
                    }
                    values_[(a * n + b) * n + c] = sum * det;
                }
            }
        }
    }
}

template <int D>
const Rational& MomentTable<D>::operator()(const std::array<int, D>& e) const
{
    std::size_t idx = 0;
    const auto n = static_cast<std::size_t>(max_exponent_ + 1);
    for (int k : e) {
        if (k < 0) {
            return zero_;
        }
        if (k > max_exponent_) {
            throw std::out_of_range("MomentTable: exponent exceeds table");
        }
        idx = idx * n + static_cast<std::size_t>(k);
    }
    return values_[idx];
}

std::pair<std::vector<double>, std::vector<double>> interval_rule(int degree)
{
    if (degree < 0) {
        throw std::invalid_argument("interval_rule: negative degree");
    }
    const auto n = static_cast<std::size_t>(degree / 2 + 1);
    return gauss_nodes(n, std::make_index_sequence<30>{});
}

QuadratureRule triangle_rule(int degree)
{
    if (degree < 1) {
        throw std::invalid_argument("triangle_rule: degree must be >= 1");
    }
    const auto [u, wu] = interval_rule(degree + 1);
    const auto [v, wv] = interval_rule(degree);
    QuadratureRule rule;
    rule.degree = degree;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double s = u[i];
            const double t = v[j] * (1.0 - u[i]);
            rule.barycentric.push_back({1.0 - s - t, s, t});
            rule.weights.push_back(wu[i] * wv[j] * (1.0 - u[i]));
        }
    }
    return rule;
}

WeightedPoints triangle_points(const std::array<Point<2>, 3>& triangle, const QuadratureRule& rule, int level)
{
    WeightedPoints out;
    for (const auto& t : subdivide(triangle, level)) {
        const double jac = std::abs((t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) -
                                    (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]));
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
            const auto& b = rule.barycentric[q];
            out.points.push_back({b[0] * t[0][0] + b[1] * t[1][0] + b[2] * t[2][0],
                                  b[0] * t[0][1] + b[1] * t[1][1] + b[2] * t[2][1]});
            out.weights.push_back(rule.weights[q] * jac);
        }
    }
    return out;
}

namespace {

template <typename Evaluate>
QuadratureResult refine_until_converged(Evaluate&& evaluate, const QuadratureOptions& options)
{
    double previous = 0.0;
    for (int level = 0; level <= options.max_level; ++level) {
        const auto [value, magnitude] = evaluate(level);
        if (level > 0 && std::abs(value - previous) <= options.relative_tolerance * magnitude) {
            return {value, level};
        }
        if (magnitude == 0.0) {
            return {0.0, level};
        }
        previous = value;
    }
    throw NumericalError("quadrature did not converge after " + std::to_string(options.max_level) +
                         " refinements");
}

} // namespace

QuadratureResult quadrature_integrate(const std::function<double(double, double)>& f,
                                      const std::array<Point<2>, 3>& triangle, int degree,
                                      const QuadratureOptions& options)
{
    const QuadratureRule rule = triangle_rule(degree);
    return refine_until_converged(
        [&](int level) {
            const WeightedPoints wp = triangle_points(triangle, rule, level);
            double sum = 0.0;
            double magnitude = 0.0;
            for (std::size_t i = 0; i < wp.weights.size(); ++i) {
                const double v = f(wp.points[i][0], wp.points[i][1]);
                sum += wp.weights[i] * v;
                magnitude += wp.weights[i] * std::abs(v);
            }
            return std::pair{sum, magnitude};
        },
        options);
}

QuadratureResult segment_quadrature(const std::function<double(double, double)>& f, const Point<2>& a,
                                    const Point<2>& b, int degree, const QuadratureOptions& options)
{
    const auto [x, w] = interval_rule(degree);
    const double length = std::hypot(b[0] - a[0], b[1] - a[1]);
    return refine_until_converged(
        [&](int level) {
            const int pieces = 1 << level;
            double sum = 0.0;
            double magnitude = 0.0;
            for (int p = 0; p < pieces; ++p) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double t = (p + x[i]) / pieces;
                    const double v = f(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]));
                    sum += w[i] * v * length / pieces;
                    magnitude += w[i] * std::abs(v) * length / pieces;
                }
            }
            return std::pair{sum, magnitude};
        },
        options);
}

template Rational integrate_polynomial<1>(const Polynomial<1>&, const RationalSimplex<1>&);
template Rational integrate_polynomial<2>(const Polynomial<2>&, const RationalSimplex<2>&);
template Rational integrate_polynomial<3>(const Polynomial<3>&, const RationalSimplex<3>&);
template Rational integrate_over_gamma<2>(const Polynomial<2>&, const RationalSimplex<2>&);
template Rational integrate_over_gamma<3>(const Polynomial<3>&, const RationalSimplex<3>&);
template class MomentTable<2>;
template class MomentTable<3>;

} // namespace pbounds
