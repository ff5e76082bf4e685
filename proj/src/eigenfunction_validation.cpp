#include "pbounds/eigenfunction_validation.hpp"

#include "pbounds/exact_integration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pbounds {

namespace {

using std::numbers::pi;

constexpr int kSmoothDegree = 12;

double integrate_t(const ScalarField& f, const Triangle2D& shape, int degree = kSmoothDegree)
{
    return quadrature_integrate(f, shape.vertices(), degree).value;
}

double integrate_gamma(const ScalarField& f, const Triangle2D& shape, int degree = kSmoothDegree)
{
    return segment_quadrature(f, Point<2>{0.0, 0.0}, Point<2>{shape.h(), 0.0}, degree).value;
}

} // namespace

double exact_up_leg(double x, double y, double h)
{
    const double z = root_zcot();
    return std::cos(z * x / h) + std::cos(z * (y - h) / h);
}

std::array<double, 2> exact_up_leg_gradient(double x, double y, double h)
{
    const double k = root_zcot() / h;
    return {-k * std::sin(k * x), -k * std::sin(k * (y - h))};
}

double exact_utr_leg(double x, double y, double h)
{
    const double k = root_tantanh() / h;
    const double a = k * x, b = k * (y - h);
    return std::cos(a) * std::cosh(b) + std::cosh(a) * std::cos(b);
}

std::array<double, 2> exact_utr_leg_gradient(double x, double y, double h)
{
    const double k = root_tantanh() / h;
    const double a = k * x, b = k * (y - h);
    return {k * (-std::sin(a) * std::cosh(b) + std::sinh(a) * std::cos(b)),
            k * (std::cos(a) * std::sinh(b) - std::cosh(a) * std::sin(b))};
}

std::pair<double, double> mccartin_pair(double x, double y)
{
    const double s = 2.0 * x - 1.0;
    const double p = 2.0 * pi / 3.0 * s, q = pi / 3.0 * s, r = 2.0 * pi / std::sqrt(3.0) * y;
    return {std::cos(p) - 2.0 * std::cos(r) * std::cos(q), std::sin(p) + 2.0 * std::cos(r) * std::sin(q)};
}

std::pair<std::array<double, 2>, std::array<double, 2>> mccartin_pair_gradient(double x, double y)
{
    const double s = 2.0 * x - 1.0;
    const double p = 2.0 * pi / 3.0 * s, q = pi / 3.0 * s, r = 2.0 * pi / std::sqrt(3.0) * y;
    const double dp = 4.0 * pi / 3.0, dq = 2.0 * pi / 3.0, dr = 2.0 * pi / std::sqrt(3.0);
    const std::array<double, 2> g1{-dp * std::sin(p) + 2.0 * dq * std::cos(r) * std::sin(q),
                                   2.0 * dr * std::sin(r) * std::cos(q)};
    const std::array<double, 2> g2{dp * std::cos(p) + 2.0 * dq * std::cos(r) * std::cos(q),
                                   -2.0 * dr * std::sin(r) * std::sin(q)};
    return {g1, g2};
}

double field_mean(const ScalarField& u, const Triangle2D& shape, ConstantKind kind)
{
    if (kind == ConstantKind::CP_T) {
        return integrate_t(u, shape) / shape.area();
    }
    return integrate_gamma(u, shape) / shape.h();
}

double rayleigh_eigenvalue(const ScalarField& u, const GradientField& grad, const Triangle2D& shape,
                           ConstantKind kind)
{
    const double mean = field_mean(u, shape, kind);
    const double num = integrate_t(
        [&](double x, double y) {
            const auto g = grad(x, y);
            return g[0] * g[0] + g[1] * g[1];
        },
        shape);
    const ScalarField shifted_sq = [&](double x, double y) {
        const double d = u(x, y) - mean;
        return d * d;
    };
    const double den = kind == ConstantKind::CTr_Gamma ? integrate_gamma(shifted_sq, shape)
                                                       : integrate_t(shifted_sq, shape);
    if (!(den > 0.0)) {
        throw std::invalid_argument("rayleigh_eigenvalue: field is constant");
    }
    return num / den;
}

ScalarField expansion_field(const EigenResult& result, const Triangle2D& shape)
{
    const BasisSpec basis = result.basis;
    const auto idx = basis.indices();
    if (result.coefficients.size() != idx.size()) {
        throw std::invalid_argument("expansion_field: coefficient count does not match the basis");
    }
    const std::vector<double> c = result.coefficients;
    const int n = basis.N;
    ScalarField raw = [basis, idx, c, n](double x, double y) {
        std::vector<double> px(static_cast<std::size_t>(n) + 1), py(static_cast<std::size_t>(n) + 1);
        if (basis.family == BasisFamily::Monomial) {
            px[0] = py[0] = 1.0;
            for (std::size_t k = 1; k < px.size(); ++k) {
                px[k] = px[k - 1] * x;
                py[k] = py[k - 1] * y;
            }
        } else {
            for (std::size_t k = 0; k < px.size(); ++k) {
                px[k] = std::cos(pi * static_cast<double>(k) * x);
                py[k] = std::cos(pi * static_cast<double>(k) * y);
            }
        }
        double s = 0.0;
        for (std::size_t p = 0; p < idx.size(); ++p) {
            s += c[p] * px[static_cast<std::size_t>(idx[p][0])] * py[static_cast<std::size_t>(idx[p][1])];
        }
        return s;
    };
    const double mean = field_mean(raw, shape, result.kind);
    return [raw, mean](double x, double y) { return raw(x, y) - mean; };
}

double compare_fields(const ScalarField& a, const ScalarField& b, const Triangle2D& shape, int degree)
{
    const double na = std::sqrt(integrate_t([&](double x, double y) { return a(x, y) * a(x, y); }, shape, degree));
    const double nb = std::sqrt(integrate_t([&](double x, double y) { return b(x, y) * b(x, y); }, shape, degree));
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw std::invalid_argument("compare: zero-norm field");
    }
    const double ab = integrate_t([&](double x, double y) { return a(x, y) * b(x, y); }, shape, degree);
    const double s = ab < 0.0 ? -1.0 : 1.0;
    const double d2 = integrate_t(
        [&](double x, double y) {
            const double d = s * a(x, y) / na - b(x, y) / nb;
            return d * d;
        },
        shape, degree);
    return std::sqrt(std::max(d2, 0.0));
}

double compare(const EigenResult& computed, const ScalarField& exact, const Triangle2D& shape)
{
    return compare_fields(expansion_field(computed, shape), exact, shape,
                          std::max(2 * computed.basis.N + 2, kSmoothDegree));
}

SampledField sample_field(const ScalarField& u, const Triangle2D& shape, int resolution, Normalization normalization)
{
    if (resolution < 2) {
        throw std::invalid_argument("sample_field: resolution must be at least 2");
    }
    const auto v = shape.vertices();
    SampledField out;
    out.resolution = resolution;
    out.normalization = normalization;
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; i + j <= resolution; ++j) {
            SamplePoint p;
            const double l2 = static_cast<double>(i) / resolution;
            const double l3 = static_cast<double>(j) / resolution;
            const double l1 = static_cast<double>(resolution - i - j) / resolution;
            p.barycentric = {l1, l2, l3};
            for (std::size_t k = 0; k < 2; ++k) {
                p.cartesian[k] = l1 * v[0][k] + l2 * v[1][k] + l3 * v[2][k];
            }
            p.value = u(p.cartesian[0], p.cartesian[1]);
            out.points.push_back(p);
        }
    }
    double scale = 0.0;
    if (normalization == Normalization::MaxOne) {
        for (const auto& p : out.points) {
            if (std::abs(p.value) > std::abs(scale)) {
                scale = p.value;
            }
        }
    } else {
        double ss = 0.0;
        for (const auto& p : out.points) {
            ss += p.value * p.value;
        }
        scale = std::sqrt(ss / static_cast<double>(out.points.size()));
    }
    if (!(std::abs(scale) > 0.0)) {
        throw std::invalid_argument("sample_field: field vanishes on the lattice");
    }
    for (auto& p : out.points) {
        p.value /= scale;
    }
    return out;
}

SampledField sample_barycentric(const EigenResult& result, const Triangle2D& shape, int resolution)
{
    return sample_field(expansion_field(result, shape), shape, resolution, Normalization::MaxOne);
}

std::string to_csv(const SampledField& field)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "l1,l2,l3,x,y,value\n";
    for (const auto& p : field.points) {
        os << p.barycentric[0] << ',' << p.barycentric[1] << ',' << p.barycentric[2] << ',' << p.cartesian[0] << ','
           << p.cartesian[1] << ',' << p.value << '\n';
    }
    return os.str();
}

std::vector<CrossingStep> CrossingReport::drops() const
{
    std::vector<CrossingStep> out;
    std::copy_if(steps.begin(), steps.end(), std::back_inserter(out), [](const CrossingStep& s) { return s.drop; });
    return out;
}

CrossingReport detect_crossings(double h, double rho, const std::vector<double>& alpha_grid, const BasisSpec& basis,
                                const CrossingOptions& options)
{
    CrossingReport report;
    std::vector<double> previous;
    double previous_alpha = 0.0;
    for (double alpha : alpha_grid) {
        const Triangle2D shape(h, rho, alpha);
        const EigenResult r = lower_bound(shape, basis, options.kind, options.solver, {});
        const SampledField f =
            sample_field(expansion_field(r, shape), shape, options.resolution, Normalization::L2Unit);
        std::vector<double> values;
        for (const auto& p : f.points) {
            values.push_back(p.value);
        }
        if (!previous.empty()) {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                dot += values[i] * previous[i];
                na += values[i] * values[i];
                nb += previous[i] * previous[i];
            }
            CrossingStep step;
            step.alpha_from = previous_alpha;
            step.alpha_to = alpha;
            step.overlap = std::abs(dot) / std::sqrt(na * nb);
            step.drop = step.overlap < options.threshold;
            report.steps.push_back(step);
        }
        previous = std::move(values);
        previous_alpha = alpha;
    }
    return report;
}

} // namespace pbounds
