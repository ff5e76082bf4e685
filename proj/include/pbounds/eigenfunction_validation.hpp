#pragma once

#include "pbounds/rayleigh_eigensolver.hpp"
#include "pbounds/reference_constants.hpp"
#include "pbounds/simplex_geometry.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pbounds {

using ScalarField = std::function<double(double, double)>;
using GradientField = std::function<std::array<double, 2>(double, double)>;

/// Minimiser of the C^P_Gamma quotient on the right isosceles triangle with legs h.
double exact_up_leg(double x, double y, double h = 1.0);
std::array<double, 2> exact_up_leg_gradient(double x, double y, double h = 1.0);

/// Minimiser of the C^Tr_Gamma quotient on the same triangle.
double exact_utr_leg(double x, double y, double h = 1.0);
std::array<double, 2> exact_utr_leg_gradient(double x, double y, double h = 1.0);

/// The two first Neumann eigenfunctions of the unit equilateral triangle (0,0), (1,0), (1/2, sqrt3/2):
/// cos p - 2 cos r cos q and sin p + 2 cos r sin q with p = 2pi(2x-1)/3, q = p/2, r = 2pi y/sqrt3.
std::pair<double, double> mccartin_pair(double x, double y);
std::pair<std::array<double, 2>, std::array<double, 2>> mccartin_pair_gradient(double x, double y);

/// The eigenvalue ||grad u||^2 / ||u - <u>||^2 of a smooth function, in the norm that `kind`
/// selects (T-mean, Gamma-mean in the volume, Gamma-mean on Gamma). Adaptive quadrature.
double rayleigh_eigenvalue(const ScalarField& u, const GradientField& grad, const Triangle2D& shape,
                           ConstantKind kind);

/// Mean of u over T (CP_T) or over Gamma (other kinds), by adaptive quadrature.
double field_mean(const ScalarField& u, const Triangle2D& shape, ConstantKind kind);

/// The computed eigenfunction with its kind-specific mean removed.
ScalarField expansion_field(const EigenResult& result, const Triangle2D& shape);

/// min over s in {-1, 1} of ||s a - b|| / ||b|| after both are L2(T)-normalised.
double compare_fields(const ScalarField& a, const ScalarField& b, const Triangle2D& shape, int degree);

/// compare_fields between a computed eigenvector and an exact function.
double compare(const EigenResult& computed, const ScalarField& exact, const Triangle2D& shape);

enum class Normalization { MaxOne, L2Unit };

struct SamplePoint {
    std::array<double, 3> barycentric{};
    Point<2> cartesian{};
    double value = 0.0;
};

struct SampledField {
    std::vector<SamplePoint> points;
    Normalization normalization = Normalization::MaxOne;
    int resolution = 0;
};

/// Regular barycentric lattice with (r+1)(r+2)/2 points; lattice index (i, j) gives
/// l2 = i/r, l3 = j/r, l1 = 1 - l2 - l3 over the vertices A, B, C.
SampledField sample_field(const ScalarField& u, const Triangle2D& shape, int resolution,
                          Normalization normalization = Normalization::MaxOne);
SampledField sample_barycentric(const EigenResult& result, const Triangle2D& shape, int resolution);

/// CSV with header l1,l2,l3,x,y,value.
std::string to_csv(const SampledField& field);

struct CrossingStep {
    double alpha_from = 0.0;
    double alpha_to = 0.0;
    double overlap = 1.0;   ///< |cosine| between consecutive minimisers on the lattice
    bool drop = false;
};

struct CrossingReport {
    std::vector<CrossingStep> steps;
    [[nodiscard]] std::vector<CrossingStep> drops() const;
};

struct CrossingOptions {
    ConstantKind kind = ConstantKind::CP_T;
    int resolution = 24;
    double threshold = 0.5;
    SolverOptions solver{};
};

/// Follows the minimiser along an alpha sweep and flags steps where its lattice overlap with
/// the previous minimiser falls below the threshold.
CrossingReport detect_crossings(double h, double rho, const std::vector<double>& alpha_grid,
                                const BasisSpec& basis, const CrossingOptions& options = {});

} // namespace pbounds
