#pragma once

#include "pbounds/numeric_types.hpp"
#include "pbounds/polynomial.hpp"
#include "pbounds/simplex_geometry.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbounds {

/// Malformed mesh or field input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EdgeTag { Interior, Dirichlet, Neumann };

std::string to_string(EdgeTag tag);

struct MeshEdge {
    std::array<std::size_t, 2> v{};
    EdgeTag tag = EdgeTag::Interior;
    std::size_t left = 0;
    std::optional<std::size_t> right;
    std::optional<Polynomial2> F;   ///< Neumann data as a polynomial in (x, y)
};

/// Triangular decomposition of a polygonal domain with tagged edges.
class DecomposedDomain {
public:
    DecomposedDomain(std::vector<RationalPoint<2>> vertices, std::vector<std::array<std::size_t, 3>> subdomains,
                     std::vector<MeshEdge> edges);

    [[nodiscard]] const std::vector<RationalPoint<2>>& vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<std::array<std::size_t, 3>>& subdomains() const { return subdomains_; }
    [[nodiscard]] const std::vector<MeshEdge>& edges() const { return edges_; }
    [[nodiscard]] RationalSimplex<2> simplex(std::size_t i) const;
    [[nodiscard]] std::array<Point<2>, 3> triangle(std::size_t i) const;
    [[nodiscard]] double edge_length(std::size_t e) const;
    /// Integer-scaled normal (dy, -dx) oriented from the lower to the higher subdomain index
    /// for interior edges and outward for boundary edges; unit normal = scaled / length.
    [[nodiscard]] RationalPoint<2> scaled_normal(std::size_t e) const;
    /// Edge indices bounding subdomain i.
    [[nodiscard]] const std::vector<std::size_t>& edges_of(std::size_t i) const { return adjacency_[i]; }

private:
    std::vector<RationalPoint<2>> vertices_;
    std::vector<std::array<std::size_t, 3>> subdomains_;
    std::vector<MeshEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

struct ProblemData {
    std::vector<std::array<std::array<Rational, 2>, 2>> A;   ///< per subdomain, symmetric positive definite
    Rational rho{0};
    std::vector<Polynomial2> f;                                ///< per subdomain
    Rational lambda1{1};
    std::optional<Polynomial2> u_D;                            ///< Dirichlet data; zero if absent

    /// Throws InputError unless every A is symmetric with smallest eigenvalue >= lambda1 > 0.
    void validate(std::size_t subdomain_count) const;
};

using FluxPolynomial = std::array<Polynomial2, 2>;

struct Fields {
    std::vector<Polynomial2> v;      ///< per subdomain; continuous across interior edges
    std::vector<FluxPolynomial> q;   ///< per subdomain; no continuity required
};

struct Violation {
    std::string condition;   ///< "interior-edge-mean", "subdomain-residual-mean", "neumann-edge-mean"
    std::string location;    ///< "edge 3" or "subdomain 1"
    double mean = 0.0;
};

struct AdmissibilityReport {
    std::vector<Violation> violations;
    std::vector<double> interior_means;   ///< per edge, zero for non-interior edges
    std::vector<double> residual_means;   ///< per subdomain
    std::vector<double> neumann_means;    ///< per edge, zero for non-Neumann edges
    [[nodiscard]] bool admissible() const { return violations.empty(); }
    [[nodiscard]] std::string describe() const;
};

/// Thrown by majorant() when the flux is outside the admissible space.
class InadmissibleFlux : public std::runtime_error {
public:
    explicit InadmissibleFlux(AdmissibilityReport report);
    const AdmissibilityReport report;
};

struct AdmissibilityOptions {
    double tolerance = 1e-10;   ///< on |mean|, i.e. |integral| <= tolerance * measure
};

/// Throws InputError when v is discontinuous across an interior edge or misses u_D on the
/// Dirichlet boundary (exact rational checks), or when sizes do not match the mesh.
void validate_fields(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh);

AdmissibilityReport check_admissibility(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh,
                                        const AdmissibilityOptions& options = {});

struct ResidualNorms {
    double d_norm = 0.0;                 ///< ||A grad v - q||_{A^-1}
    std::vector<double> r_norms;         ///< ||div q + f - rho^2 v|| per subdomain
    std::vector<double> r_ij;            ///< per edge, zero for non-interior edges
    std::vector<double> rho_k;           ///< per edge, zero for non-Neumann edges
};

ResidualNorms residual_norms(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh);

struct MajorantOptions {
    /// Divide the residual part by sqrt(lambda1) instead of lambda1.
    bool sqrt_lambda1 = false;
    /// Weight eta_i^2 by the number of contributing edges (Cauchy-Schwarz over edge sums).
    bool edge_count_weighting = false;
    AdmissibilityOptions admissibility{};
};

struct MajorantReport {
    ResidualNorms norms;
    std::vector<double> diameters;
    std::vector<double> ctr_max;   ///< dimensional trace constant per subdomain
    std::vector<double> eta;
    double re1 = 0.0;
    double re2 = 0.0;
    double total = 0.0;
    AdmissibilityReport admissibility;
    std::optional<double> true_error;
    std::optional<double> efficiency;
};

/// Largest edge trace constant of a triangle (dimensional, includes sqrt of the edge length).
double triangle_trace_constant_max(const std::array<Point<2>, 3>& triangle);

MajorantReport majorant(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh,
                        const MajorantOptions& options = {});

/// ||D|| + C1 ||R||_Omega + C2 ||q.n - F||_{Gamma_N}; requires zero interior jumps.
double global_majorant(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh, double c1,
                       double c2);

/// (||grad e||_A^2 + ||rho e||^2)^(1/2) with e = u - v, by exact integration.
double true_error(const Fields& fields, const Polynomial2& u_exact, const ProblemData& data,
                  const DecomposedDomain& mesh);

// ---------------------------------------------------------------- JSON ingestion

struct MajorantProblem {
    DecomposedDomain mesh;
    ProblemData data;
};

/// Parses the mesh JSON (vertices, subdomains, edges, data); throws InputError naming the field.
MajorantProblem parse_mesh_json(const std::string& text, int digits = kDefaultRationalDigits);

struct FieldInput {
    Fields fields;
    std::optional<Polynomial2> u_exact;
};

/// Parses {"v": [poly per subdomain], "q": [[poly_x, poly_y] per subdomain], "u_exact": poly?}.
FieldInput parse_fields_json(const std::string& text, std::size_t subdomain_count,
                             int digits = kDefaultRationalDigits);

/// Polynomials are lists of [a, b, coeff] triples for coeff x^a y^b.
Polynomial2 parse_polynomial_json(const std::string& text, int digits = kDefaultRationalDigits);

std::string report_to_json(const MajorantReport& report);

// ---------------------------------------------------------------- manufactured problem

/// Unit square split at its centre into four triangles; u = x(1-x)y(1-y), A = I, rho = 0,
/// Neumann on x = 1 and Dirichlet elsewhere.
struct ManufacturedProblem {
    DecomposedDomain mesh;
    ProblemData data;
    Polynomial2 u;
    Fields exact;          ///< v = u, q = grad u
    Fields interpolant;    ///< v = P1 interpolant of u, q = grad u
};

ManufacturedProblem manufactured_four_triangles();

/// Lowest-order Raviart-Thomas field on `triangle` with unit outward flux through the edge
/// opposite vertex `k` and zero flux through the other two.
FluxPolynomial rt0_basis(const RationalSimplex<2>& triangle, int k);

/// Random polynomial flux perturbation of total degree <= degree whose edge fluxes all vanish
/// on every subdomain, so adding it to an admissible flux keeps it admissible.
std::vector<FluxPolynomial> admissible_perturbation(const DecomposedDomain& mesh, int degree, double amplitude,
                                                    std::mt19937_64& rng);

} // namespace pbounds
