#include "pbounds/reference_constants.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbounds {

namespace {

using std::numbers::pi;

/// Bisection down to `width`, then two Newton steps on g.
template <typename Sign, typename G, typename DG>
double bracket_and_polish(double lo, double hi, Sign&& sign, G&& g, DG&& dg)
{
    double s_lo = sign(lo);
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double s_mid = sign(mid);
        if ((s_mid < 0) == (s_lo < 0)) {
            lo = mid;
            s_lo = s_mid;
        } else {
            hi = mid;
        }
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        const double d = dg(z);
        if (d != 0.0) {
            z -= g(z) / d;
        }
    }
    return z;
}

double compute_zeta0()
{
    // z cot z + 1 = 0  <=>  z cos z + sin z = 0 on (pi/2, pi).
    auto g = [](double z) { return z * std::cos(z) + std::sin(z); };
    auto dg = [](double z) { return 2.0 * std::cos(z) - z * std::sin(z); };
    return bracket_and_polish(pi / 2, pi, g, g, dg);
}

double compute_zeta_hat0()
{
    // cos z (tan z + tanh z) = sin z + cos z tanh z is smooth across the pole of tan.
    auto g = [](double z) { return std::sin(z) + std::cos(z) * std::tanh(z); };
    auto dg = [](double z) {
        const double t = std::tanh(z);
        return std::cos(z) - std::sin(z) * t + std::cos(z) * (1.0 - t * t);
    };
    return bracket_and_polish(pi / 2 + 1e-9, pi - 1e-9, g, g, dg);
}

} // namespace

std::string to_string(ConstantKind kind)
{
    switch (kind) {
    case ConstantKind::CP_T: return "CP_T";
    case ConstantKind::CP_Gamma: return "CP_Gamma";
    case ConstantKind::CTr_Gamma: return "CTr_Gamma";
    }
    return "?";
}

ConstantKind parse_constant_kind(const std::string& text)
{
    std::string s;
    for (char c : text) {
        s.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (s == "cp-t") {
        return ConstantKind::CP_T;
    }
    if (s == "cp-gamma") {
        return ConstantKind::CP_Gamma;
    }
    if (s == "ctr-gamma") {
        return ConstantKind::CTr_Gamma;
    }
    throw std::invalid_argument("unknown constant kind '" + text + "' (expected cp-t, cp-gamma or ctr-gamma)");
}

double root_zcot()
{
    static const double z = compute_zeta0();
    return z;
}

double root_tantanh()
{
    static const double z = compute_zeta_hat0();
    return z;
}

std::pair<double, double> exact_leg_constants(double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("exact_leg_constants: h must be positive");
    }
    const double zh = root_tantanh();
    return {h / root_zcot(), std::sqrt(h / (zh * std::tanh(zh)))};
}

std::pair<double, double> exact_hyp_constants(double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("exact_hyp_constants: h must be positive");
    }
    return {h / (2.0 * root_zcot()), std::sqrt(h / 2.0)};
}

double exact_classical_cp(const ReferenceTag& ref)
{
    if (ref.dimension != 2) {
        throw std::invalid_argument("exact_classical_cp: no closed form for spatial references");
    }
    switch (ref.angle) {
    case ReferenceAngle::Pi4: return 1.0 / (std::sqrt(2.0) * pi);
    case ReferenceAngle::Pi3: return 3.0 / (4.0 * pi);
    case ReferenceAngle::Pi2: return 1.0 / pi;
    case ReferenceAngle::TwoPi3: break;
    }
    throw std::invalid_argument("exact_classical_cp: 2pi/3 is not a planar reference");
}

LiteratureBounds literature_bounds(const Triangle2D& t)
{
    const SimplexMetrics m = metrics(t);
    LiteratureBounds b;
    b.pw_upper = m.diameter / pi;
    b.cheng_lower = m.diameter / (2.0 * kBesselJ01);
    b.perimeter_lower = m.perimeter_or_surface / (4.0 * pi);
    b.best_lower = std::max(b.cheng_lower, b.perimeter_lower);
    // Isosceles with apex A: AB = AC.
    b.isosceles = std::abs(t.rho() - 1.0) <= 1e-12;
    if (!b.isosceles) {
        b.ls_upper = m.diameter / kBesselJ11;
        return b;
    }
    const double a = t.alpha();
    const double wedge = 1.0 / (kBesselJ01 * std::sqrt(2.0 * (pi - a) * std::tan(a / 2.0)));
    double factor = 0.0;
    if (a <= pi / 3) {
        factor = 1.0 / kBesselJ11;
    } else if (a <= pi / 2) {
        factor = std::min(1.0 / kBesselJ11, wedge);
    } else {
        factor = wedge;
    }
    b.ls_upper = m.diameter * factor;
    return b;
}

double ReferenceConstantTable::value(ReferenceAngle a, ConstantKind kind) const
{
    const auto it = entries.find(a);
    if (it == entries.end()) {
        throw std::invalid_argument("reference table has no entry for this angle");
    }
    switch (kind) {
    case ConstantKind::CP_Gamma: return it->second.first;
    case ConstantKind::CTr_Gamma: return it->second.second;
    case ConstantKind::CP_T: break;
    }
    throw std::invalid_argument("reference table stores CP_Gamma and CTr_Gamma only");
}

const ReferenceConstantTable& reference_table_3d()
{
    static const ReferenceConstantTable table{{
        {ReferenceAngle::Pi4, {0.341147, 0.831335}},
        {ReferenceAngle::Pi3, {0.342589, 0.762905}},
        {ReferenceAngle::Pi2, {0.375603, 0.751999}},
        {ReferenceAngle::TwoPi3, {0.4286652, 0.864630}},
    }};
    return table;
}

} // namespace pbounds
