#include "pbounds/eigenfunction_validation.hpp"
#include "pbounds/error_majorant.hpp"
#include "pbounds/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;
using namespace pbounds;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInadmissible = 4;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// CSV to stdout when no output directory is given.
void emit(const std::string& out_dir, const std::string& stem, const std::string& csv, const std::string& json)
{
    if (out_dir.empty()) {
        std::cout << csv;
        return;
    }
    write_file(fs::path(out_dir) / (stem + ".csv"), csv);
    write_file(fs::path(out_dir) / (stem + ".json"), json);
}

void check_degree(int n, int dimension)
{
    const int max_n = dimension == 2 ? 8 : 5;
    if (n < 1 || n > max_n) {
        throw ConfigError("N must lie in [1, " + std::to_string(max_n) + "] for dimension " +
                          std::to_string(dimension));
    }
}

SweepOptions sweep_options(unsigned parallelism)
{
    SweepOptions o;
    o.assembly.rational_digits = rational_digits_from_env();
    o.parallelism = std::max(1u, parallelism);
    return o;
}

struct Bounds2DArgs {
    double rho = 1.0;
    double h = 1.0;
    std::string alpha_grid = "pi/18:17*pi/18:17";
    int N = 6;
    std::string basis = "monomial";
    std::string out;
    unsigned parallelism = 1;
};

int run_bounds2d(const Bounds2DArgs& a)
{
    check_degree(a.N, 2);
    const BasisSpec basis{parse_basis_family(a.basis), a.N, 2};
    const auto alphas = parse_alpha_grid(a.alpha_grid);
    const auto rows = compute_bounds2d(a.h, a.rho, alphas, basis, sweep_options(a.parallelism));
    emit(a.out, "bounds2d", bounds2d_csv(rows), bounds2d_json(rows, basis, a.h));
    int code = kExitOk;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::cerr << "numerical failure: " << r.error << '\n';
            code = kExitNumerical;
        }
    }
    return code;
}

struct Bounds3DArgs {
    double h1 = 1.0, h2 = 1.0, h3 = 1.0;
    std::string theta = "pi/2";
    std::string alpha_grid = "pi/6:5*pi/6:7";
    int N = 4;
    std::string out;
    unsigned parallelism = 1;
};

int run_bounds3d(const Bounds3DArgs& a)
{
    check_degree(a.N, 3);
    const BasisSpec basis{BasisFamily::Monomial, a.N, 3};
    const auto alphas = parse_alpha_grid(a.alpha_grid);
    const double theta = parse_alpha_grid(a.theta).at(0);
    const auto rows = compute_bounds3d(a.h1, a.h2, a.h3, theta, alphas, basis, sweep_options(a.parallelism));
    emit(a.out, "bounds3d", bounds3d_csv(rows), bounds3d_json(rows, basis));
    int code = kExitOk;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::cerr << "numerical failure: " << r.error << '\n';
            code = kExitNumerical;
        }
    }
    return code;
}

int run_tables(int id, const std::string& out, unsigned parallelism)
{
    if (id < 1 || id > 6) {
        throw ConfigError("table id must be 1..6");
    }
    TableOptions o;
    o.assembly.rational_digits = rational_digits_from_env();
    o.parallelism = std::max(1u, parallelism);
    const TableResult t = compute_table(id, o);
    const std::string stem = "table" + std::to_string(id);
    if (out.empty()) {
        std::cout << table_csv(t);
        return kExitOk;
    }
    write_file(fs::path(out) / (stem + ".csv"), table_csv(t));
    write_file(fs::path(out) / (stem + "_diff.csv"), table_diff_csv(t));
    write_file(fs::path(out) / (stem + ".json"), table_json(t));
    return kExitOk;
}

struct EigenArgs {
    double h = 1.0;
    double rho = 1.0;
    std::string alpha = "pi/2";
    std::string kind = "cp-gamma";
    int k = 1;
    int N = 6;
    int resolution = 20;
    std::string out;
    bool svg = true;
};

int run_eigenfunction(const EigenArgs& a)
{
    check_degree(a.N, 2);
    if (a.k < 1 || a.k > 20) {
        throw ConfigError("k must lie in [1, 20]");
    }
    if (a.resolution < 1 || a.resolution > 1000) {
        throw ConfigError("resolution must lie in [1, 1000]");
    }
    const double alpha = parse_alpha_grid(a.alpha).at(0);
    const Triangle2D t(a.h, a.rho, alpha);
    const BasisSpec basis{BasisFamily::Monomial, a.N, 2};
    const ConstantKind kind = parse_constant_kind(a.kind);
    AssemblyOptions assembly;
    assembly.rational_digits = rational_digits_from_env();
    const AssembledForms forms = assemble(t, basis, assembly);
    const auto pairs = eigenpairs(forms, kind, static_cast<std::size_t>(a.k));
    const EigenPairResult& pair = pairs.at(static_cast<std::size_t>(a.k - 1));

    EigenResult as_result;
    as_result.eigenvalue = pair.eigenvalue;
    as_result.lambda_extremal = 1.0 / pair.eigenvalue;
    as_result.coefficients = pair.coefficients;
    as_result.constant_lower_bound = pair.constant;
    as_result.residual = pair.residual;
    as_result.basis = basis;
    as_result.kind = kind;
    const SampledField field = sample_barycentric(as_result, t, a.resolution);

    if (a.out.empty()) {
        std::cout << to_csv(field);
        return kExitOk;
    }
    const std::string stem = "eigenfunction_" + to_string(kind) + "_k" + std::to_string(a.k);
    write_file(fs::path(a.out) / (stem + ".csv"), to_csv(field));
    write_file(fs::path(a.out) / (stem + ".json"), sampled_field_json(field, pair.eigenvalue, pair.constant));
    if (a.svg) {
        write_file(fs::path(a.out) / (stem + ".svg"),
                   field_svg(field, to_string(kind) + " k=" + std::to_string(a.k) +
                                        " eigenvalue=" + format_number(pair.eigenvalue)));
    }
    return kExitOk;
}

int run_majorant(const std::string& mesh_path, const std::string& fields_path, const std::string& out,
                 bool sqrt_lambda1, bool edge_count)
{
    const int digits = rational_digits_from_env();
    MajorantProblem problem = parse_mesh_json(read_file(mesh_path), digits);
    const FieldInput input = parse_fields_json(read_file(fields_path), problem.mesh.subdomains().size(), digits);
    validate_fields(input.fields, problem.data, problem.mesh);
    MajorantOptions opts;
    opts.sqrt_lambda1 = sqrt_lambda1;
    opts.edge_count_weighting = edge_count;
    MajorantReport report = majorant(input.fields, problem.data, problem.mesh, opts);
    if (input.u_exact) {
        const double e = true_error(input.fields, *input.u_exact, problem.data, problem.mesh);
        report.true_error = e;
        if (e > 0.0) {
            report.efficiency = report.total / e;
        }
    }
    const std::string json = report_to_json(report);
    if (out.empty()) {
        std::cout << json << '\n';
    } else {
        write_file(out, json + "\n");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-sided bounds of Poincare and trace constants on simplices"};
    // "--h" is the side length, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    Bounds2DArgs b2;
    auto* c2 = app.add_subcommand("bounds2d", "Lower and upper bounds over an angle sweep of T(h, rho, alpha)");
    c2->add_option("--rho", b2.rho, "ratio of the second to the first side")->check(CLI::PositiveNumber);
    c2->add_option("--h", b2.h, "length of the first side")->check(CLI::PositiveNumber);
    c2->add_option("--alpha-grid", b2.alpha_grid, "A:B:K or a single angle, e.g. pi/18:17*pi/18:17");
    c2->add_option("--N", b2.N, "polynomial degree per variable");
    c2->add_option("--basis", b2.basis, "monomial or cosine");
    c2->add_option("--out", b2.out, "output directory (CSV to stdout if omitted)");
    c2->add_option("--parallelism", b2.parallelism, "worker threads");

    Bounds3DArgs b3;
    auto* c3 = app.add_subcommand("bounds3d", "Bounds on tetrahedra over an angle sweep");
    c3->add_option("--h1", b3.h1)->check(CLI::PositiveNumber);
    c3->add_option("--h2", b3.h2)->check(CLI::PositiveNumber);
    c3->add_option("--h3", b3.h3)->check(CLI::PositiveNumber);
    c3->add_option("--theta", b3.theta, "angle of the third edge");
    c3->add_option("--alpha-grid", b3.alpha_grid);
    c3->add_option("--N", b3.N);
    c3->add_option("--out", b3.out);
    c3->add_option("--parallelism", b3.parallelism);

    int table_id = 0;
    std::string table_out;
    unsigned table_par = 1;
    auto* ct = app.add_subcommand("tables", "Recompute a published table and diff it against the stored values");
    ct->add_option("--id", table_id, "table number 1..6")->required();
    ct->add_option("--out", table_out, "output directory");
    ct->add_option("--parallelism", table_par);

    EigenArgs ea;
    auto* ce = app.add_subcommand("eigenfunction", "Sample the k-th computed eigenfunction");
    ce->add_option("--h", ea.h)->check(CLI::PositiveNumber);
    ce->add_option("--rho", ea.rho)->check(CLI::PositiveNumber);
    ce->add_option("--alpha", ea.alpha);
    ce->add_option("--kind", ea.kind, "cp-t, cp-gamma or ctr-gamma");
    ce->add_option("--k", ea.k);
    ce->add_option("--N", ea.N);
    ce->add_option("--resolution", ea.resolution);
    ce->add_option("--out", ea.out);
    ce->add_flag("!--no-svg", ea.svg, "skip the SVG plot");

    std::string mesh_path, fields_path, majorant_out;
    bool sqrt_lambda1 = false, edge_count = false;
    auto* cm = app.add_subcommand("majorant", "Error majorant for a decomposed reaction-diffusion problem");
    cm->add_option("--mesh", mesh_path)->required();
    cm->add_option("--fields", fields_path)->required();
    cm->add_option("--out", majorant_out, "report path (stdout if omitted)");
    cm->add_flag("--sqrt-lambda1", sqrt_lambda1, "divide the residual part by sqrt(lambda1)");
    cm->add_flag("--edge-count-weighting", edge_count, "weight eta by the number of edges");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (c2->parsed()) {
            return run_bounds2d(b2);
        }
        if (c3->parsed()) {
            return run_bounds3d(b3);
        }
        if (ct->parsed()) {
            return run_tables(table_id, table_out, table_par);
        }
        if (ce->parsed()) {
            return run_eigenfunction(ea);
        }
        return run_majorant(mesh_path, fields_path, majorant_out, sqrt_lambda1, edge_count);
    } catch (const InadmissibleFlux& e) {
        std::cerr << "inadmissible flux:\n" << e.report.describe() << '\n';
        return kExitInadmissible;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const FactorizationError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
}
