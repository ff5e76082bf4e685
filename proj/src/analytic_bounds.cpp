#include "pbounds/analytic_bounds.hpp"

#include "pbounds/dense_matrix.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace pbounds {

namespace {

constexpr double kOracleTolerance = 1e-12;

double lambda_max_sym2(double a, double b, double c)
{
    // Eigenvalue of [[a, b], [b, c]] written without cancellation.
    const double half_trace = 0.5 * (a + c);
    const double r = std::hypot(0.5 * (a - c), b);
    return half_trace + r;
}

bool agrees(double closed, double oracle)
{
    return std::isfinite(closed) && std::abs(closed - oracle) <= kOracleTolerance * std::abs(oracle);
}

} // namespace

// With z = rho e^{i alpha} each radicand is a squared modulus; evaluating the modulus directly
// keeps full accuracy near the double eigenvalue at the reference shapes.

double mu_leg(double rho, double alpha)
{
    const std::complex<double> z = std::polar(rho, alpha);
    return 0.5 * (1.0 + rho * rho + std::abs(1.0 + z * z));
}

double mu_hyp(double rho, double alpha)
{
    const std::complex<double> z = std::polar(rho, alpha);
    const double t = 1.0 + 2.0 * rho * rho - 2.0 * rho * std::cos(alpha);
    return t + std::abs(2.0 * z * z - 2.0 * z + 1.0);
}

double mu_pi3(double rho, double alpha)
{
    const std::complex<double> z = std::polar(rho, alpha);
    const double q = 1.0 + rho * rho - rho * std::cos(alpha);
    return 2.0 / 3.0 * (q + std::abs(z * z - z + 1.0));
}

double mu_oracle_2d(const Triangle2D& t, const ReferenceTag& ref)
{
    const AffineMap map = affine_map_2d(t, ref);
    const auto& b = map.matrix;
    const double h2 = t.h() * t.h();
    const double a00 = b(0, 0) * b(0, 0) + b(0, 1) * b(0, 1);
    const double a01 = b(0, 0) * b(1, 0) + b(0, 1) * b(1, 1);
    const double a11 = b(1, 0) * b(1, 0) + b(1, 1) * b(1, 1);
    return lambda_max_sym2(a00, a01, a11) / h2;
}

MuValue mu_2d(const Triangle2D& t, const ReferenceTag& ref)
{
    double closed = 0.0;
    switch (ref.angle) {
    case ReferenceAngle::Pi2: closed = mu_leg(t.rho(), t.alpha()); break;
    case ReferenceAngle::Pi4: closed = mu_hyp(t.rho(), t.alpha()); break;
    case ReferenceAngle::Pi3: closed = mu_pi3(t.rho(), t.alpha()); break;
    case ReferenceAngle::TwoPi3: throw std::invalid_argument("mu_2d: 2pi/3 is a spatial reference");
    }
    const double oracle = mu_oracle_2d(t, ref);
    if (agrees(closed, oracle)) {
        return {closed, MuPath::ClosedForm};
    }
    return {oracle, MuPath::Oracle};
}

UpperBound2D upper_bounds_2d(const Triangle2D& t)
{
    const ReferenceTag leg{2, ReferenceAngle::Pi2};
    const ReferenceTag hyp{2, ReferenceAngle::Pi4};
    const ReferenceTag equi{2, ReferenceAngle::Pi3};
    const double m_leg = mu_2d(t, leg).value;
    const double m_hyp = mu_2d(t, hyp).value;
    const double m_equi = mu_2d(t, equi).value;
    const auto [cp_leg, ctr_leg] = exact_leg_constants(1.0);
    const auto [cp_hyp, ctr_hyp] = exact_hyp_constants(1.0);
    const double rs = t.rho() * std::sin(t.alpha());

    UpperBound2D out;
    const double cpg_leg = std::sqrt(m_leg) * cp_leg;
    const double cpg_hyp = std::sqrt(m_hyp) * cp_hyp;
    out.cp_gamma = std::min(cpg_leg, cpg_hyp);
    out.cp_gamma_ref = cpg_leg <= cpg_hyp ? leg : hyp;

    const double ctr_l = std::sqrt(m_leg / rs) * ctr_leg;
    const double ctr_h = std::sqrt(m_hyp / (2.0 * rs)) * ctr_hyp;
    out.ctr_gamma = std::min(ctr_l, ctr_h);
    out.ctr_gamma_ref = ctr_l <= ctr_h ? leg : hyp;

    const std::array<std::pair<ReferenceTag, double>, 3> classical{{
        {hyp, std::sqrt(m_hyp) * exact_classical_cp(hyp)},
        {equi, std::sqrt(m_equi) * exact_classical_cp(equi)},
        {leg, std::sqrt(m_leg) * exact_classical_cp(leg)},
    }};
    out.cp_classical = std::numeric_limits<double>::infinity();
    for (const auto& [ref, value] : classical) {
        if (value < out.cp_classical) {
            out.cp_classical = value;
            out.cp_classical_ref = ref;
        }
    }
    return out;
}

namespace {

Matrix<double> scaled_bbt_3d(const Tetrahedron3D& t, const ReferenceTag& alpha_hat)
{
    const AffineMap map = affine_map_3d(t, alpha_hat);
    Matrix<double> a(3, 3);
    const double s = 1.0 / (t.h2() * t.h2());
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                v += map.matrix(i, k) * map.matrix(j, k);
            }
            a(i, j) = v * s;
        }
    }
    return a;
}

} // namespace

double mu_oracle_3d(const Tetrahedron3D& t, const ReferenceTag& alpha_hat)
{
    const auto eig = jacobi_eigensolve(scaled_bbt_3d(t, alpha_hat));
    return eig.values.back();
}

MuValue mu_3d(const Tetrahedron3D& t, const ReferenceTag& alpha_hat)
{
    const AffineMap map = affine_map_3d(t, alpha_hat);
    const double s = 1.0 / t.h2();
    const double b11 = map.matrix(0, 0) * s;
    const double b12 = map.matrix(0, 1) * s;
    const double b22 = map.matrix(1, 1) * s;
    const double b32 = map.matrix(2, 1) * s;
    const double b33 = map.matrix(2, 2) * s;
    const double q11 = b11 * b11, q12 = b12 * b12, q22 = b22 * b22, q32 = b32 * b32, q33 = b33 * b33;
    const double e1 = q11 + q12 + q22 + q32 + q33;
    const double e2 = q11 * q22 + q11 * q32 + q11 * q33 + q12 * q33 + q22 * q33;
    const double e3 = e2 / 3.0 - (e1 / 3.0) * (e1 / 3.0);
    const double e4 = std::pow(e1 / 3.0, 3) - e1 * e2 / 6.0 + 0.5 * q11 * q22 * q33;
    // Three real roots make e3^3 + e4^2 <= 0, so the square root is taken in C.
    const std::complex<double> e5 = e4 + std::sqrt(std::complex<double>(e3 * e3 * e3 + e4 * e4, 0.0));
    double closed = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(e5) > 0.0) {
        const std::complex<double> u = std::pow(e5, 1.0 / 3.0);
        closed = (u - e3 / u).real() + e1 / 3.0;
    }
    const double oracle = mu_oracle_3d(t, alpha_hat);
    if (agrees(closed, oracle)) {
        return {closed, MuPath::ClosedForm};
    }
    return {oracle, MuPath::Oracle};
}

UpperBound3D upper_bounds_3d(const Tetrahedron3D& t)
{
    const auto& table = reference_table_3d();
    UpperBound3D out;
    out.cp_gamma = std::numeric_limits<double>::infinity();
    out.ctr_gamma = std::numeric_limits<double>::infinity();
    const double ss = std::sin(t.alpha()) * std::sin(t.theta());
    for (const auto& ref : reference_tags(3)) {
        const double mu = mu_3d(t, ref).value;
        const double cp = std::sqrt(mu) * table.value(ref.angle, ConstantKind::CP_Gamma);
        const double ctr = std::sqrt(mu * std::sin(ref.radians()) / ss) * table.value(ref.angle, ConstantKind::CTr_Gamma);
        if (cp < out.cp_gamma) {
            out.cp_gamma = cp;
            out.cp_gamma_ref = ref;
        }
        if (ctr < out.ctr_gamma) {
            out.ctr_gamma = ctr;
            out.ctr_gamma_ref = ref;
        }
    }
    return out;
}

} // namespace pbounds
