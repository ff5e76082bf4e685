#pragma once

#include "pbounds/eigenfunction_validation.hpp"
#include "pbounds/rayleigh_eigensolver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pbounds {

/// "A:B:K" is K equally spaced angles from A to B inclusive; a single expression is one angle.
/// Endpoints accept expressions such as "pi/18" or "17*pi/18". Every angle must lie in (0, pi).
std::vector<double> parse_alpha_grid(const std::string& spec);

/// PBOUNDS_PRECISION if set, otherwise `fallback`. Throws std::invalid_argument unless the
/// value is an integer in [10, 200].
int rational_digits_from_env(int fallback = kDefaultRationalDigits);

struct Bounds2DRow {
    double alpha = 0.0;
    double rho = 0.0;
    double lower_cp_t = 0.0;
    double upper_cp_mr = 0.0;   ///< classical constant mapped from the equilateral reference
    double upper_cp_ls = 0.0;   ///< improved isosceles estimate, or diam / j11
    double lower_cp_gamma = 0.0;
    double upper_cp_gamma = 0.0;
    double lower_ctr_gamma = 0.0;
    double upper_ctr_gamma = 0.0;
    double cheng_lower = 0.0;
    double pw_upper = 0.0;
    std::string error;          ///< non-empty when the point failed
};

/// All columns are dimensionless (divided by h, or sqrt(h) for the trace constant).
std::vector<Bounds2DRow> compute_bounds2d(double h, double rho, const std::vector<double>& alphas,
                                          const BasisSpec& basis, const SweepOptions& options);

struct Bounds3DRow {
    double alpha = 0.0;
    double theta = 0.0;
    double lower_cp_gamma = 0.0;
    double upper_cp_gamma = 0.0;
    double lower_ctr_gamma = 0.0;
    double upper_ctr_gamma = 0.0;
    std::string error;
};

std::vector<Bounds3DRow> compute_bounds3d(double h1, double h2, double h3, double theta,
                                          const std::vector<double>& alphas, const BasisSpec& basis,
                                          const SweepOptions& options);

std::string bounds2d_csv(const std::vector<Bounds2DRow>& rows);
std::string bounds2d_json(const std::vector<Bounds2DRow>& rows, const BasisSpec& basis, double h);
std::string bounds3d_csv(const std::vector<Bounds3DRow>& rows);
std::string bounds3d_json(const std::vector<Bounds3DRow>& rows, const BasisSpec& basis);

struct TableOptions {
    SolverOptions solver{};
    AssemblyOptions assembly{};
    unsigned parallelism = 1;
};

/// Computed counterpart of a published table, row for row in the published order.
struct TableResult {
    int id = 0;
    std::vector<std::string> key_names;
    std::vector<std::string> value_names;
    std::vector<std::vector<std::string>> keys;
    std::vector<std::vector<double>> computed;
    std::vector<std::vector<double>> published;
};

TableResult compute_table(int id, const TableOptions& options = {});

/// Keys and computed values.
std::string table_csv(const TableResult& table);
/// keys, column, computed, published, abs_deviation, rel_deviation per cell.
std::string table_diff_csv(const TableResult& table);
std::string table_json(const TableResult& table);

std::string sampled_field_json(const SampledField& field, double eigenvalue, double constant);

/// Scatter plot of a sampled field with a diverging colour map, fixed 400 x 400 viewBox.
std::string field_svg(const SampledField& field, const std::string& title);

/// Formats a double with 17 significant digits.
std::string format_number(double x);

} // namespace pbounds
