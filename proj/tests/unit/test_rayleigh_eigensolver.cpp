#include "pbounds/rayleigh_eigensolver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace pbounds;
using std::numbers::pi;

namespace {

const Triangle2D kRight(1.0, 1.0, pi / 2);

std::size_t position(const BasisSpec& b, std::array<int, 3> e)
{
    const auto idx = b.indices();
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), e) - idx.begin());
}

} // namespace

TEST(BasisSpec, SizesAndPrefixOrdering)
{
    EXPECT_EQ((BasisSpec{BasisFamily::Monomial, 6, 2}).size(), 48u);
    EXPECT_EQ((BasisSpec{BasisFamily::Monomial, 4, 3}).size(), 124u);
    const BasisSpec big{BasisFamily::Monomial, 5, 2}, small{BasisFamily::Monomial, 3, 2};
    const auto a = big.indices(), b = small.indices();
    ASSERT_EQ(b.size(), 15u);
    EXPECT_TRUE(std::equal(b.begin(), b.end(), a.begin()));
    const auto pos = big.positions_of(small);
    for (std::size_t k = 0; k < pos.size(); ++k) {
        EXPECT_EQ(pos[k], k);
    }
}

TEST(BasisFamily, ParseAndPrint)
{
    EXPECT_EQ(parse_basis_family("monomial"), BasisFamily::Monomial);
    EXPECT_EQ(parse_basis_family(to_string(BasisFamily::Cosine)), BasisFamily::Cosine);
    EXPECT_THROW(parse_basis_family("legendre"), std::invalid_argument);
}

TEST(Assemble, RightTriangleLinearBasis)
{
    const BasisSpec b{BasisFamily::Monomial, 1, 2};
    const auto f = assemble(kRight, b);
    const auto x = position(b, {1, 0, 0});
    const auto y = position(b, {0, 1, 0});
    EXPECT_EQ(f.K(x, x), Rational(1, 2));
    EXPECT_EQ(f.m[x], Rational(1, 6));
    EXPECT_EQ(f.g[x], Rational(1, 2));
    EXPECT_EQ(f.g[y], Rational(0));
    EXPECT_EQ(f.measure_T, Rational(1, 2));
    EXPECT_EQ(f.measure_Gamma, Rational(1));
    EXPECT_TRUE(f.exact);
    EXPECT_TRUE(f.K.is_symmetric());
    EXPECT_TRUE(f.M_vol.is_symmetric());
    EXPECT_TRUE(f.M_tr.is_symmetric());
}

TEST(DeflatedMass, ExactEntries)
{
    const BasisSpec b{BasisFamily::Monomial, 1, 2};
    const auto f = assemble(kRight, b);
    const auto x = position(b, {1, 0, 0});
    const auto y = position(b, {0, 1, 0});
    // 1/12 - (1/6)^2 / (1/2)
    EXPECT_EQ(deflated_mass(f, ConstantKind::CP_T)(x, x), Rational(1, 36));
    // y vanishes on Gamma, so its trace deviation is zero.
    EXPECT_EQ(deflated_mass(f, ConstantKind::CTr_Gamma)(y, y), Rational(0));
}

TEST(DeflatedMass, PositiveSemidefinite)
{
    const BasisSpec b{BasisFamily::Monomial, 3, 2};
    const auto f = assemble(Triangle2D(1.0, 0.8, 1.1), b);
    for (auto kind : {ConstantKind::CP_T, ConstantKind::CP_Gamma, ConstantKind::CTr_Gamma}) {
        const auto d = deflated_mass(f, kind);
        EXPECT_TRUE(d.is_symmetric());
        for (std::size_t i = 0; i < d.rows(); ++i) {
            EXPECT_GE(d(i, i), 0);
        }
        auto dd = d.map<double>([](const Rational& q) { return q.get_d(); });
        const auto eig = jacobi_eigensolve(dd);
        EXPECT_GE(eig.values.front(), -1e-14);
    }
}

TEST(RestrictForms, EqualsDirectAssembly)
{
    const Triangle2D t(1.0, 1.3, 0.9);
    const auto big = assemble(t, BasisSpec{BasisFamily::Monomial, 4, 2});
    const BasisSpec small{BasisFamily::Monomial, 2, 2};
    const auto a = restrict_forms(big, small);
    const auto b = assemble(t, small);
    ASSERT_EQ(a.K.rows(), b.K.rows());
    for (std::size_t i = 0; i < a.K.rows(); ++i) {
        EXPECT_EQ(a.m[i], b.m[i]);
        EXPECT_EQ(a.g[i], b.g[i]);
        for (std::size_t j = 0; j < a.K.cols(); ++j) {
            EXPECT_EQ(a.K(i, j), b.K(i, j));
            EXPECT_EQ(a.M_vol(i, j), b.M_vol(i, j));
            EXPECT_EQ(a.M_tr(i, j), b.M_tr(i, j));
        }
    }
}

TEST(LowerBound, LinearBasisMatchesFractionOracle)
{
    // Frozen from an exact-fraction assembly solved with an independent dense eigensolver.
    const auto f = assemble(kRight, BasisSpec{BasisFamily::Monomial, 1, 2});
    EXPECT_NEAR(lower_bound(f, ConstantKind::CP_T).constant_lower_bound, 0.28867513459481287, 1e-12);
    EXPECT_NEAR(lower_bound(f, ConstantKind::CP_Gamma).constant_lower_bound, 0.4713174721185517, 1e-12);
    EXPECT_NEAR(lower_bound(f, ConstantKind::CTr_Gamma).constant_lower_bound, 0.5773502691896256, 1e-12);
}

TEST(LowerBound, ConvergesToExactOnRightTriangle)
{
    const auto f = assemble(kRight, BasisSpec{BasisFamily::Monomial, 6, 2});
    const auto cp = lower_bound(f, ConstantKind::CP_Gamma);
    const auto ctr = lower_bound(f, ConstantKind::CTr_Gamma);
    EXPECT_NEAR(cp.constant_lower_bound, 0.49291, 5e-5);
    EXPECT_NEAR(ctr.constant_lower_bound, 0.6560, 5e-5);
    EXPECT_LE(cp.constant_lower_bound, 1.0 / root_zcot() + 1e-12);
    EXPECT_LT(cp.residual, 1e-8);
    EXPECT_TRUE(cp.certified);
    EXPECT_NEAR(cp.eigenvalue * cp.lambda_extremal, 1.0, 1e-12);
}

TEST(LowerBound, MonotoneInBasisSize)
{
    const auto f = assemble(Triangle2D(1.0, 0.7, 2.0), BasisSpec{BasisFamily::Monomial, 5, 2});
    for (auto kind : {ConstantKind::CP_T, ConstantKind::CP_Gamma, ConstantKind::CTr_Gamma}) {
        double previous = 0.0;
        for (int n = 1; n <= 5; ++n) {
            const double v =
                lower_bound(restrict_forms(f, BasisSpec{BasisFamily::Monomial, n, 2}), kind).constant_lower_bound;
            EXPECT_GE(v, previous - 1e-14);
            previous = v;
        }
    }
}

TEST(LowerBound, DimensionlessUnderScaling)
{
    const BasisSpec b{BasisFamily::Monomial, 3, 2};
    for (auto kind : {ConstantKind::CP_T, ConstantKind::CP_Gamma, ConstantKind::CTr_Gamma}) {
        const double a = lower_bound(Triangle2D(1.0, 0.9, 1.2), b, kind).constant_lower_bound;
        const double c = lower_bound(Triangle2D(2.5, 0.9, 1.2), b, kind).constant_lower_bound;
        EXPECT_NEAR(a, c, 1e-12);
    }
}

TEST(LowerBound, HybridAgreesWithExtendedJacobi)
{
    const auto f = assemble(Triangle2D(1.0, 1.0, 2.0), BasisSpec{BasisFamily::Monomial, 6, 2});
    SolverOptions ext;
    ext.extended_jacobi = true;
    for (auto kind : {ConstantKind::CP_T, ConstantKind::CP_Gamma, ConstantKind::CTr_Gamma}) {
        const auto a = lower_bound(f, kind);
        const auto b = lower_bound(f, kind, ext);
        EXPECT_NEAR(a.lambda_extremal, b.lambda_extremal, 1e-12 * b.lambda_extremal);
        for (std::size_t k = 0; k < a.coefficients.size(); ++k) {
            EXPECT_NEAR(a.coefficients[k], b.coefficients[k], 1e-7);
        }
    }
}

TEST(LowerBound, TabulatedSweepPoints)
{
    const BasisSpec b{BasisFamily::Monomial, 6, 2};
    SweepOptions o;
    o.parallelism = 2;
    const auto one = lower_bound_sweep(1.0, 1.0, {2 * pi / 3}, b, {ConstantKind::CP_Gamma}, o);
    EXPECT_NEAR(one[0].results[0]->constant_lower_bound, 0.5884, 5e-5);
    const auto two = lower_bound_sweep(1.0, std::sqrt(0.5), {pi / 4, 5 * pi / 6}, b,
                                       {ConstantKind::CP_Gamma, ConstantKind::CTr_Gamma}, o);
    EXPECT_NEAR(two[0].results[0]->constant_lower_bound, 0.24646, 5e-6);
    EXPECT_NEAR(two[1].results[1]->constant_lower_bound, 1.1334, 5e-5);
}

TEST(LowerBoundSweep, DeterministicUnderParallelism)
{
    const BasisSpec b{BasisFamily::Monomial, 3, 2};
    std::vector<double> grid;
    for (int k = 1; k < 10; ++k) {
        grid.push_back(pi * k / 10);
    }
    SweepOptions serial, parallel;
    parallel.parallelism = 4;
    const auto a = lower_bound_sweep(1.0, 0.8, grid, b, {ConstantKind::CP_T, ConstantKind::CTr_Gamma}, serial);
    const auto c = lower_bound_sweep(1.0, 0.8, grid, b, {ConstantKind::CP_T, ConstantKind::CTr_Gamma}, parallel);
    ASSERT_EQ(a.size(), c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].alpha, c[i].alpha);
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_EQ(a[i].results[k]->constant_lower_bound, c[i].results[k]->constant_lower_bound);
            EXPECT_EQ(a[i].results[k]->coefficients, c[i].results[k]->coefficients);
        }
    }
}

TEST(Eigenpairs, EquilateralDoubleEigenvalue)
{
    const auto f = assemble(Triangle2D(1.0, 1.0, pi / 3), BasisSpec{BasisFamily::Monomial, 6, 2});
    const auto pairs = eigenpairs(f, ConstantKind::CP_T, 3);
    ASSERT_EQ(pairs.size(), 3u);
    EXPECT_NEAR(pairs[0].eigenvalue, 17.5463, 5e-4);
    EXPECT_NEAR(pairs[0].eigenvalue, pairs[1].eigenvalue, 1e-6 * pairs[0].eigenvalue);
    EXPECT_GE(pairs[0].eigenvalue, 16 * pi * pi / 9 - 1e-9);
    EXPECT_LT(pairs[1].eigenvalue, pairs[2].eigenvalue);
    for (const auto& p : pairs) {
        EXPECT_NEAR(p.constant, 1.0 / std::sqrt(p.eigenvalue), 1e-14);
    }
    // Ties are ordered by their normalised coefficients.
    EXPECT_TRUE(pairs[0].coefficients <= pairs[1].coefficients || pairs[0].eigenvalue < pairs[1].eigenvalue);
}

TEST(Eigenpairs, FirstPairMatchesLowerBound)
{
    const auto f = assemble(Triangle2D(1.0, 1.5, 1.0), BasisSpec{BasisFamily::Monomial, 4, 2});
    const auto pairs = eigenpairs(f, ConstantKind::CP_T, 2);
    const auto lb = lower_bound(f, ConstantKind::CP_T);
    EXPECT_NEAR(pairs[0].constant, lb.constant_lower_bound, 1e-13);
}

TEST(LowerBound3D, ReferenceTetrahedron)
{
    const auto r = lower_bound(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2), BasisSpec{BasisFamily::Monomial, 4, 3},
                               ConstantKind::CP_Gamma);
    EXPECT_NEAR(r.constant_lower_bound, 0.375603, 5e-6);
    EXPECT_THROW(lower_bound(Tetrahedron3D(1, 1, 1, pi / 2, pi / 2), BasisSpec{BasisFamily::Monomial, 1, 3},
                             ConstantKind::CP_T),
                 std::invalid_argument);
}

TEST(CosineBasis, LowerBoundBelowExact)
{
    const BasisSpec b{BasisFamily::Cosine, 3, 2};
    const auto r = lower_bound(kRight, b, ConstantKind::CP_Gamma);
    EXPECT_FALSE(r.certified);
    EXPECT_LE(r.constant_lower_bound, 1.0 / root_zcot() + 1e-9);
    EXPECT_GT(r.constant_lower_bound, 0.45);
}

TEST(Solver, ConditionGuardRaises)
{
    const auto f = assemble(Triangle2D(1.0, 0.2, 0.3), BasisSpec{BasisFamily::Monomial, 8, 2});
    SolverOptions o;
    o.digits = 21;
    EXPECT_THROW(lower_bound(f, ConstantKind::CP_T, o), NumericalError);
}

TEST(Solver, RejectsMismatchedSizes)
{
    Matrix<Rational> a(2, 2), k(3, 3);
    EXPECT_THROW(solve_pencil(a, k, 1), std::invalid_argument);
}

TEST(EvaluateExpansion, Monomials)
{
    const BasisSpec b{BasisFamily::Monomial, 1, 2};
    std::vector<double> c(b.size(), 0.0);
    c[position(b, {1, 1, 0})] = 2.0;
    c[position(b, {1, 0, 0})] = -1.0;
    EXPECT_DOUBLE_EQ(evaluate_expansion(b, c, 0.5, 3.0), 2.0 * 1.5 - 0.5);
}

TEST(ConstantFromLambda, Scaling)
{
    EXPECT_DOUBLE_EQ(constant_from_lambda(4.0, ConstantKind::CP_T, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(constant_from_lambda(4.0, ConstantKind::CTr_Gamma, 4.0), 1.0);
}
