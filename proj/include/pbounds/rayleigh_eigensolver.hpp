#pragma once

#include "pbounds/dense_matrix.hpp"
#include "pbounds/numeric_types.hpp"
#include "pbounds/reference_constants.hpp"
#include "pbounds/simplex_geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pbounds {

enum class BasisFamily { Monomial, Cosine };

std::string to_string(BasisFamily family);
BasisFamily parse_basis_family(const std::string& text);

/// Trial space: x^i y^j (z^k) or cos(pi i x) cos(pi j y), all indices in [0, N], the
/// all-zero index excluded.
struct BasisSpec {
    BasisFamily family = BasisFamily::Monomial;
    int N = 6;
    int dimension = 2;

    [[nodiscard]] std::size_t size() const;
    /// Multi-indices ordered by max entry, then lexicographically, so the indices of a
    /// smaller N form a prefix.
    [[nodiscard]] std::vector<std::array<int, 3>> indices() const;
    /// Positions of the indices of `smaller` inside indices().
    [[nodiscard]] std::vector<std::size_t> positions_of(const BasisSpec& smaller) const;
};

using Shape = std::variant<Triangle2D, Tetrahedron3D>;

/// Quadratic forms of one trial space on one simplex. Monomial forms are exact; cosine forms
/// hold quadrature values (stored as rationals so one pipeline serves both).
struct AssembledForms {
    BasisSpec basis;
    bool exact = true;
    double length_scale = 1.0;      ///< h (2D) or h2 (3D)
    Matrix<Rational> K;             ///< stiffness
    Matrix<Rational> M_vol;         ///< volume mass
    Matrix<Rational> M_tr;          ///< mass on Gamma
    std::vector<Rational> m;        ///< volume integrals of the basis
    std::vector<Rational> g;        ///< integrals over Gamma
    Rational measure_T;
    Rational measure_Gamma;
};

struct AssemblyOptions {
    int rational_digits = kDefaultRationalDigits;
};

AssembledForms assemble(const Shape& shape, const BasisSpec& basis, const AssemblyOptions& options = {});

/// Forms of a smaller trial space, taken as principal sub-blocks.
AssembledForms restrict_forms(const AssembledForms& forms, const BasisSpec& smaller);

/// Quadratic form of ||w - <w>||^2 for the requested constant.
Matrix<Rational> deflated_mass(const AssembledForms& forms, ConstantKind kind);

struct SolverOptions {
    int digits = 45;                   ///< working precision of the reduction
    bool extended_jacobi = false;      ///< run the eigensolve itself in extended precision
    double residual_tolerance = 1e-8;
};

/// One eigenpair of the pencil (M~, K): M~ v = lambda K v.
struct PencilPair {
    double lambda = 0.0;                ///< Rayleigh quotient v'M~v / v'Kv, i.e. a squared constant
    std::vector<double> coefficients;   ///< sign-normalized, max-abs entry 1
    double residual = 0.0;
};

struct PencilSolution {
    std::vector<PencilPair> pairs;      ///< descending lambda
    int digits_used = 0;
    bool extended_jacobi_used = false;
    double condition_estimate = 0.0;
};

/// Largest `count` eigenpairs of (M~, K) with K symmetric positive definite.
PencilSolution solve_pencil(const Matrix<Rational>& deflated, const Matrix<Rational>& stiffness,
                            std::size_t count, const SolverOptions& options = {});

struct EigenResult {
    double lambda_extremal = 0.0;       ///< largest pencil eigenvalue (squared constant)
    double eigenvalue = 0.0;            ///< 1 / lambda_extremal, the quotient minimum
    std::vector<double> coefficients;
    double constant_lower_bound = 0.0;  ///< dimensionless
    double residual = 0.0;
    BasisSpec basis;
    ConstantKind kind = ConstantKind::CP_T;
    bool certified = true;              ///< false for quadrature-assembled forms
    int digits_used = 0;
};

/// Lower bound of a constant from already assembled forms.
EigenResult lower_bound(const AssembledForms& forms, ConstantKind kind, const SolverOptions& options = {});
EigenResult lower_bound(const Shape& shape, const BasisSpec& basis, ConstantKind kind,
                        const SolverOptions& options = {}, const AssemblyOptions& assembly = {});

struct EigenPairResult {
    double eigenvalue = 0.0;            ///< quotient eigenvalue, ascending
    double constant = 0.0;              ///< dimensionless 1/sqrt(eigenvalue) scaled
    std::vector<double> coefficients;
    double residual = 0.0;
};

/// The k smallest quotient eigenvalues with eigenvectors; ties ordered by the sign-normalized
/// coefficient vectors.
std::vector<EigenPairResult> eigenpairs(const AssembledForms& forms, ConstantKind kind, std::size_t k,
                                        const SolverOptions& options = {});

struct SweepPoint {
    double alpha = 0.0;
    std::vector<std::optional<EigenResult>> results;  ///< one per requested kind
    std::string error;                                ///< empty on success
};

struct SweepOptions {
    SolverOptions solver;
    AssemblyOptions assembly;
    unsigned parallelism = 1;
};

/// Lower bounds on T(h, rho, alpha) for every alpha in the grid; failures are recorded per
/// point and the sweep continues. Output order follows the grid.
std::vector<SweepPoint> lower_bound_sweep(double h, double rho, const std::vector<double>& alpha_grid,
                                          const BasisSpec& basis, const std::vector<ConstantKind>& kinds,
                                          const SweepOptions& options = {});

/// Value of sum_p c_p phi_p at a point (z ignored in 2D).
double evaluate_expansion(const BasisSpec& basis, const std::vector<double>& coefficients, double x, double y,
                          double z = 0.0);

/// Converts a lambda_max into the dimensionless constant for `kind`.
double constant_from_lambda(double lambda, ConstantKind kind, double length_scale);

} // namespace pbounds
