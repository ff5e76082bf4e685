#pragma once

#include "pbounds/reference_constants.hpp"
#include "pbounds/simplex_geometry.hpp"

namespace pbounds {

/// Which formula produced a mu value.
enum class MuPath { ClosedForm, Oracle };

struct MuValue {
    double value = 0.0;
    MuPath path = MuPath::ClosedForm;
};

/// Largest eigenvalue of B B^T / h^2 for the map from the right-angle reference.
double mu_leg(double rho, double alpha);
/// Same for the map from the pi/4 reference (Gamma is its hypotenuse).
double mu_hyp(double rho, double alpha);
/// Same for the map from the equilateral reference.
double mu_pi3(double rho, double alpha);

/// Direct symmetric eigenvalue oracle: lambda_max(B^T B) / h^2 for the planar map.
double mu_oracle_2d(const Triangle2D& t, const ReferenceTag& ref);

/// Closed form validated against the oracle; the oracle wins on disagreement.
MuValue mu_2d(const Triangle2D& t, const ReferenceTag& ref);

struct UpperBound2D {
    double cp_gamma = 0.0;
    double ctr_gamma = 0.0;
    double cp_classical = 0.0;
    ReferenceTag cp_gamma_ref;
    ReferenceTag ctr_gamma_ref;
    ReferenceTag cp_classical_ref;
};

/// Guaranteed upper bounds, dimensionless (divide the constants by h, resp. sqrt(h)).
UpperBound2D upper_bounds_2d(const Triangle2D& t);

/// lambda_max(B B^T) / h2^2 for the map from T_{pi/2, ahat}, via the cubic resolvent
/// evaluated in complex arithmetic and checked against a Jacobi oracle.
MuValue mu_3d(const Tetrahedron3D& t, const ReferenceTag& alpha_hat);
double mu_oracle_3d(const Tetrahedron3D& t, const ReferenceTag& alpha_hat);

struct UpperBound3D {
    double cp_gamma = 0.0;
    double ctr_gamma = 0.0;
    ReferenceTag cp_gamma_ref{3, ReferenceAngle::Pi2};
    ReferenceTag ctr_gamma_ref{3, ReferenceAngle::Pi2};
    /// The reference constants are numerical, so these are estimates rather than bounds.
    bool approximate_reference = true;
};

/// Upper estimates, dimensionless in h2.
UpperBound3D upper_bounds_3d(const Tetrahedron3D& t);

} // namespace pbounds
