#pragma once

#include "pbounds/simplex_geometry.hpp"

#include <map>
#include <string>
#include <utility>

namespace pbounds {

enum class ConstantKind { CP_T, CP_Gamma, CTr_Gamma };

std::string to_string(ConstantKind kind);
/// Accepts "cp-t", "cp-gamma", "ctr-gamma" (case-insensitive, '_' allowed).
ConstantKind parse_constant_kind(const std::string& text);

enum class Provenance { ClosedForm, RootEquation, NumericTable };

struct ExactConstant {
    double value = 0.0;
    ConstantKind kind = ConstantKind::CP_T;
    Provenance provenance = Provenance::ClosedForm;
};

/// Smallest positive zeros of the Bessel functions J0 and J1.
inline constexpr double kBesselJ01 = 2.404825557695773;
inline constexpr double kBesselJ11 = 3.831705970207512;

/// Root of z cot z + 1 = 0 in (0, pi).
double root_zcot();
/// Root of tan z + tanh z = 0 in (0, pi).
double root_tantanh();

/// (C^P_Gamma, C^Tr_Gamma) for the right isosceles triangle with legs h and Gamma a leg.
std::pair<double, double> exact_leg_constants(double h);
/// Same with Gamma the hypotenuse of length h.
std::pair<double, double> exact_hyp_constants(double h);

/// Classical Poincare constant of the planar reference triangles.
double exact_classical_cp(const ReferenceTag& ref);

struct LiteratureBounds {
    double pw_upper = 0.0;        ///< diam / pi
    double ls_upper = 0.0;        ///< improved isosceles bound, or diam / j11 otherwise
    double cheng_lower = 0.0;     ///< diam / (2 j01)
    double perimeter_lower = 0.0; ///< P / (4 pi)
    double best_lower = 0.0;
    bool isosceles = false;
};

/// Bounds of C^P_T from the literature; dimensional (they scale with h).
LiteratureBounds literature_bounds(const Triangle2D& t);

/// Dimensionless reference constants of the unit tetrahedra T_{pi/2, ahat}.
struct ReferenceConstantTable {
    std::map<ReferenceAngle, std::pair<double, double>> entries; ///< (CP_Gamma, CTr_Gamma)

    [[nodiscard]] double value(ReferenceAngle a, ConstantKind kind) const;
};

const ReferenceConstantTable& reference_table_3d();

} // namespace pbounds
