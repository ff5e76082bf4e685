#include "pbounds/analytic_bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pbounds;
using std::numbers::pi;

namespace {

/// Largest eigenvalue of a symmetric 2x2 matrix in closed form.
double lambda_max_2x2(double a, double b, double d)
{
    return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + b * b);
}

/// mu for the right-angle reference, from B B^T with B = [[1, rho cos a], [0, rho sin a]].
double mu_leg_oracle(double rho, double alpha)
{
    const double c = rho * std::cos(alpha), s = rho * std::sin(alpha);
    return lambda_max_2x2(1 + c * c, c * s, s * s);
}

} // namespace

TEST(MuLeg, KnownValues)
{
    EXPECT_NEAR(mu_leg(1.0, pi / 2), 1.0, 1e-15);
    EXPECT_NEAR(mu_leg(1.0, pi / 3), 1.5, 1e-14);
}

TEST(MuLeg, MatchesClosedFormEigenvalueOracle)
{
    for (double rho : {0.3, 0.7071, 1.0, 1.5, 2.5}) {
        for (int k = 1; k < 30; ++k) {
            const double alpha = pi * k / 30;
            EXPECT_NEAR(mu_leg(rho, alpha), mu_leg_oracle(rho, alpha), 1e-13 * mu_leg_oracle(rho, alpha));
        }
    }
}

TEST(MuHyp, KnownValues)
{
    EXPECT_NEAR(mu_hyp(std::sqrt(0.5), pi / 4), 1.0, 1e-14);
    // B = [[1, -1], [0, 2]]: largest eigenvalue of B B^T is 3 + sqrt(5).
    EXPECT_NEAR(mu_hyp(1.0, pi / 2), 3.0 + std::sqrt(5.0), 1e-13);
}

TEST(MuHyp, AgreesWithOracleAndIsAtLeastOne)
{
    for (double rho : {0.4, std::sqrt(0.5), 1.0, 1.7}) {
        for (int k = 1; k < 36; ++k) {
            const double alpha = pi * k / 36;
            const Triangle2D t(1.0, rho, alpha);
            const double oracle = mu_oracle_2d(t, {2, ReferenceAngle::Pi4});
            EXPECT_NEAR(mu_hyp(rho, alpha), oracle, 1e-12 * oracle);
            EXPECT_GE(mu_hyp(rho, alpha), 1.0 - 1e-12);
        }
    }
}

TEST(MuPi3, KnownValuesAndOracle)
{
    EXPECT_NEAR(mu_pi3(1.0, pi / 3), 1.0, 1e-14);
    EXPECT_NEAR(mu_pi3(1.0, pi / 2), 2.0, 1e-14);
    for (double rho : {0.5, 1.0, 2.0}) {
        for (int k = 1; k < 24; ++k) {
            const double alpha = pi * k / 24;
            const double oracle = mu_oracle_2d(Triangle2D(1.0, rho, alpha), {2, ReferenceAngle::Pi3});
            EXPECT_NEAR(mu_pi3(rho, alpha), oracle, 1e-12 * oracle);
        }
    }
}

TEST(Mu2D, PathIsClosedFormOnGrid)
{
    const auto v = mu_2d(Triangle2D(1.0, 0.8, 1.3), {2, ReferenceAngle::Pi2});
    EXPECT_EQ(v.path, MuPath::ClosedForm);
    EXPECT_NEAR(v.value, mu_leg_oracle(0.8, 1.3), 1e-13);
}

TEST(UpperBounds2D, References)
{
    const auto a = upper_bounds_2d(Triangle2D(1.0, 1.0, pi / 2));
    EXPECT_NEAR(a.cp_gamma, 0.4929, 5e-5);
    EXPECT_NEAR(a.ctr_gamma, 0.6560, 5e-5);
    EXPECT_NEAR(a.cp_classical, 1.0 / pi, 1e-14);
    const auto b = upper_bounds_2d(Triangle2D(1.0, std::sqrt(0.5), pi / 4));
    EXPECT_NEAR(b.cp_gamma, 0.24646, 5e-6);
    EXPECT_NEAR(b.ctr_gamma, 0.70711, 5e-6);
}

TEST(UpperBounds2D, DominateExactValuesOnReferences)
{
    const auto eq = upper_bounds_2d(Triangle2D(1.0, 1.0, pi / 3));
    EXPECT_NEAR(eq.cp_classical, 3.0 / (4.0 * pi), 1e-14);
    for (int k = 1; k < 18; ++k) {
        const auto u = upper_bounds_2d(Triangle2D(1.0, 1.0, pi * k / 18));
        EXPECT_GT(u.cp_gamma, 0.0);
        EXPECT_GT(u.ctr_gamma, 0.0);
        EXPECT_GE(u.cp_classical, 3.0 / (4.0 * pi) - 1e-14);
    }
}

TEST(UpperBounds2D, ScaleFree)
{
    const auto a = upper_bounds_2d(Triangle2D(1.0, 0.6, 2.0));
    const auto b = upper_bounds_2d(Triangle2D(5.0, 0.6, 2.0));
    EXPECT_NEAR(a.cp_gamma, b.cp_gamma, 1e-13);
    EXPECT_NEAR(a.ctr_gamma, b.ctr_gamma, 1e-13);
}

TEST(Mu3D, IdentityMaps)
{
    EXPECT_NEAR(mu_3d(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2), {3, ReferenceAngle::Pi2}).value, 1.0, 1e-13);
    EXPECT_NEAR(mu_3d(Tetrahedron3D(1, 1, 1, pi / 3, pi / 2), {3, ReferenceAngle::Pi3}).value, 1.0, 1e-13);
}

TEST(Mu3D, MatchesJacobiOracle)
{
    for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6}) {
        for (double alpha : {pi / 7, pi / 4, pi / 2, 3 * pi / 4, 6 * pi / 7}) {
            for (const auto& ref : reference_tags(3)) {
                const Tetrahedron3D t(1.0, 1.2, 0.9, alpha, theta);
                const double oracle = mu_oracle_3d(t, ref);
                EXPECT_NEAR(mu_3d(t, ref).value, oracle, 1e-12 * oracle);
            }
        }
    }
}

TEST(UpperBounds3D, TabulatedPoints)
{
    const auto a = upper_bounds_3d(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2));
    EXPECT_NEAR(a.cp_gamma, 0.37560, 1e-5);
    EXPECT_NEAR(a.ctr_gamma, 0.75200, 1e-5);
    EXPECT_TRUE(a.approximate_reference);
    EXPECT_NEAR(upper_bounds_3d(Tetrahedron3D(1, 1, 1, pi / 6, pi / 6)).cp_gamma, 0.49035, 1e-5);
}

TEST(UpperBounds3D, TraceScalingUsesSquareRootOfAreaRatio)
{
    // The mu-part cancels between the two kinds, leaving sqrt(sin ahat / (sin alpha sin theta)).
    const Tetrahedron3D t(1, 1, 1, 5 * pi / 6, 5 * pi / 6);
    const auto u = upper_bounds_3d(t);
    const auto& table = reference_table_3d();
    const double mu = mu_3d(t, u.ctr_gamma_ref).value;
    const double expected = table.value(u.ctr_gamma_ref.angle, ConstantKind::CTr_Gamma) * std::sqrt(mu) *
                            std::sqrt(std::sin(u.ctr_gamma_ref.radians()) / (std::sin(5 * pi / 6) * std::sin(5 * pi / 6)));
    EXPECT_NEAR(u.ctr_gamma, expected, 1e-12);
}
