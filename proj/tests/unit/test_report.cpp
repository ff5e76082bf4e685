#include "pbounds/published_tables.hpp"
#include "pbounds/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

using namespace pbounds;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("pbounds_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliRun run_cli(const std::string& args, const std::string& env = "")
{
    const fs::path dir = scratch_dir("cli");
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(PBOUNDS_CLI_PATH) + " " + args + " > " +
                            (dir / "out").string() + " 2> " + (dir / "err").string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir / "out");
    r.err = slurp(dir / "err");
    fs::remove_all(dir);
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) {
        if (!l.empty()) {
            out.push_back(l);
        }
    }
    return out;
}

std::string example(const std::string& name)
{
    return std::string(PBOUNDS_DATA_DIR) + "/examples/" + name;
}

} // namespace

TEST(AlphaGrid, RangesAndSinglePoints)
{
    const auto g = parse_alpha_grid("pi/18:17*pi/18:17");
    ASSERT_EQ(g.size(), 17u);
    EXPECT_NEAR(g.front(), kPi / 18, 1e-15);
    EXPECT_NEAR(g.back(), 17 * kPi / 18, 1e-15);
    EXPECT_NEAR(g[8], kPi / 2, 1e-15);
    EXPECT_EQ(parse_alpha_grid("pi/2").size(), 1u);
    EXPECT_NEAR(parse_alpha_grid("pi/3-pi/36").at(0), kPi / 3 - kPi / 36, 1e-15);
    EXPECT_EQ(parse_alpha_grid("0.5:0.5:1").size(), 1u);
}

TEST(AlphaGrid, RejectsBadInput)
{
    EXPECT_THROW(parse_alpha_grid("0:pi/2:3"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("pi"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("pi/6:7*pi/6:3"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("pi/6:pi/3:0"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("pi/6:pi/3:2.5"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("pi/6:pi/3"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("banana"), std::invalid_argument);
}

TEST(Precision, EnvironmentOverride)
{
    ::unsetenv("PBOUNDS_PRECISION");
    EXPECT_EQ(rational_digits_from_env(30), 30);
    ::setenv("PBOUNDS_PRECISION", "50", 1);
    EXPECT_EQ(rational_digits_from_env(30), 50);
    ::setenv("PBOUNDS_PRECISION", "5", 1);
    EXPECT_THROW(rational_digits_from_env(30), std::invalid_argument);
    ::setenv("PBOUNDS_PRECISION", "40x", 1);
    EXPECT_THROW(rational_digits_from_env(30), std::invalid_argument);
    ::unsetenv("PBOUNDS_PRECISION");
}

TEST(FormatNumber, RoundTrips)
{
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_number(x)), x);
    EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(PublishedTables, EmbeddedDataParses)
{
    const auto tables = parse_published_tables(published_tables_text());
    ASSERT_EQ(tables.size(), 6u);
    std::size_t rows = 0;
    for (const auto& t : tables) {
        rows += t.rows.size();
        for (const auto& r : t.rows) {
            EXPECT_EQ(r.values.size(), t.value_names.size());
            EXPECT_EQ(r.keys.size(), t.key_names.size());
        }
    }
    EXPECT_EQ(rows, 185u);
    const auto& t4 = published_table(4);
    const auto* row = t4.find({215, kPi / 2});
    ASSERT_NE(row, nullptr);
    EXPECT_NEAR(row->values[t4.value_index("cp_gamma")], 0.375603, 1e-12);
    EXPECT_THROW(published_table(7), std::out_of_range);
}

TEST(PublishedTables, MalformedBlocksRejected)
{
    EXPECT_THROW(parse_published_tables("table 1\nkeys N\nvalues a b\nrow 1 0.5\nend\n"), std::invalid_argument);
    EXPECT_THROW(parse_published_tables("row 1 2\n"), std::invalid_argument);
}

TEST(Bounds2D, ColumnsAndOrdering)
{
    const auto alphas = parse_alpha_grid("pi/6:5*pi/6:5");
    const BasisSpec basis{BasisFamily::Monomial, 3, 2};
    const auto rows = compute_bounds2d(2.0, 1.0, alphas, basis, {});
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_GT(r.lower_cp_t, 0.0);
        EXPECT_LE(r.lower_cp_gamma, r.upper_cp_gamma);
        EXPECT_LE(r.lower_ctr_gamma, r.upper_ctr_gamma);
        EXPECT_LE(r.cheng_lower, r.lower_cp_t);
        EXPECT_LE(r.lower_cp_t, r.upper_cp_mr);
    }
    const auto csv = lines(bounds2d_csv(rows));
    ASSERT_EQ(csv.size(), 6u);
    EXPECT_EQ(csv[0], "alpha,rho,lower_CP_T,upper_CP_MR,upper_CP_LS,lower_CP_Gamma,upper_CP_Gamma,lower_CTr_Gamma,"
                      "upper_CTr_Gamma,cheng_lower,pw_upper");
    const auto json = bounds2d_json(rows, basis, 2.0);
    EXPECT_NE(json.find("poincare-bounds/1"), std::string::npos);
}

TEST(Bounds2D, ScaleInvariance)
{
    const auto alphas = parse_alpha_grid("pi/3");
    const BasisSpec basis{BasisFamily::Monomial, 2, 2};
    const auto a = compute_bounds2d(1.0, 0.7, alphas, basis, {});
    const auto b = compute_bounds2d(3.0, 0.7, alphas, basis, {});
    EXPECT_NEAR(a[0].lower_cp_gamma, b[0].lower_cp_gamma, 1e-12);
    EXPECT_NEAR(a[0].lower_ctr_gamma, b[0].lower_ctr_gamma, 1e-12);
    EXPECT_NEAR(a[0].upper_cp_ls, b[0].upper_cp_ls, 1e-12);
}

TEST(Bounds3D, RowsAreOrdered)
{
    const auto rows = compute_bounds3d(1, 1, 1, kPi / 2, parse_alpha_grid("pi/3:2*pi/3:2"),
                                       BasisSpec{BasisFamily::Monomial, 2, 3}, {});
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_LE(r.lower_cp_gamma, r.upper_cp_gamma);
        EXPECT_LE(r.lower_ctr_gamma, r.upper_ctr_gamma);
    }
    EXPECT_EQ(lines(bounds3d_csv(rows)).size(), 3u);
}

TEST(Tables, SmallTableMatchesPublishedLayout)
{
    const auto t = compute_table(1);
    const auto& pub = published_table(1);
    ASSERT_EQ(t.computed.size(), pub.rows.size());
    ASSERT_EQ(t.value_names, pub.value_names);
    const auto diff = lines(table_diff_csv(t));
    EXPECT_EQ(diff.size(), 1 + pub.rows.size() * pub.value_names.size());
    EXPECT_EQ(diff[0], "N,column,computed,published,abs_deviation,rel_deviation");
    EXPECT_NE(table_json(t).find("\"table\": 1"), std::string::npos);
}

TEST(Svg, FixedViewBox)
{
    SampledField f;
    f.resolution = 1;
    f.points = {{0, 0, -1}, {1, 0, 0}, {0, 1, 1}};
    const auto svg = field_svg(f, "demo");
    EXPECT_NE(svg.find("viewBox=\"0 0 400 400\""), std::string::npos);
    EXPECT_NE(svg.find("demo"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo)
{
    EXPECT_EQ(run_cli("bounds2d --alpha-grid 0:pi:3").code, 2);
    EXPECT_EQ(run_cli("bounds2d --N 9").code, 2);
    EXPECT_EQ(run_cli("bounds3d --N 6").code, 2);
    EXPECT_EQ(run_cli("tables --id 9").code, 2);
    EXPECT_EQ(run_cli("nonsense").code, 2);
    EXPECT_EQ(run_cli("bounds2d --rho -1").code, 2);
    EXPECT_EQ(run_cli("bounds2d --N 2 --alpha-grid pi/2", "PBOUNDS_PRECISION=3").code, 2);
    EXPECT_EQ(run_cli("majorant --mesh /nonexistent.json --fields /nonexistent.json").code, 2);
}

TEST(Cli, HelpListsSubcommands)
{
    const auto r = run_cli("--help");
    EXPECT_EQ(r.code, 0);
    for (const char* sub : {"bounds2d", "bounds3d", "tables", "eigenfunction", "majorant"}) {
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    }
}

TEST(Cli, NumericalFailureExitsThree)
{
    const auto r = run_cli("bounds2d --alpha-grid 1e-6 --rho 0.001 --N 8");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("condition"), std::string::npos);
}

TEST(Cli, Bounds2DToStdout)
{
    const auto r = run_cli("bounds2d --N 2 --alpha-grid pi/4:3*pi/4:3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out).size(), 4u);
}

TEST(Cli, DeterministicAcrossParallelism)
{
    const auto a = run_cli("bounds2d --N 3 --alpha-grid pi/6:5*pi/6:6 --parallelism 1");
    const auto b = run_cli("bounds2d --N 3 --alpha-grid pi/6:5*pi/6:6 --parallelism 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, EigenfunctionSampling)
{
    const auto dir = scratch_dir("eig");
    const auto r = run_cli("eigenfunction --h 1 --rho 1 --alpha pi/2 --kind cp-gamma --k 1 --N 4 --resolution 20 --out " +
                           dir.string());
    EXPECT_EQ(r.code, 0) << r.err;
    const auto csv = lines(slurp(dir / "eigenfunction_CP_Gamma_k1.csv"));
    EXPECT_EQ(csv.size(), 1u + 231u);
    EXPECT_TRUE(fs::exists(dir / "eigenfunction_CP_Gamma_k1.json"));
    EXPECT_TRUE(fs::exists(dir / "eigenfunction_CP_Gamma_k1.svg"));
    fs::remove_all(dir);
}

TEST(Cli, MajorantExactPair)
{
    const auto r = run_cli("majorant --mesh " + example("four_triangles_mesh.json") + " --fields " +
                           example("four_triangles_exact.json"));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"total\": 0.0"), std::string::npos);
    EXPECT_NE(r.out.find("\"efficiency\": null"), std::string::npos);
}

TEST(Cli, MajorantInterpolantIsSharp)
{
    const auto r = run_cli("majorant --mesh " + example("four_triangles_mesh.json") + " --fields " +
                           example("four_triangles_interpolant.json"));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"efficiency\": 1.0"), std::string::npos);
}

TEST(Cli, InadmissibleFluxExitsFour)
{
    const auto r = run_cli("majorant --mesh " + example("four_triangles_mesh.json") + " --fields " +
                           example("four_triangles_inadmissible.json"));
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("edge 0"), std::string::npos);
}

TEST(Cli, TablesWritesDiffFile)
{
    const auto dir = scratch_dir("tables");
    const auto r = run_cli("tables --id 1 --out " + dir.string());
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "table1.csv"));
    EXPECT_TRUE(fs::exists(dir / "table1_diff.csv"));
    EXPECT_TRUE(fs::exists(dir / "table1.json"));
    fs::remove_all(dir);
}
