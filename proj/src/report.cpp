#include "pbounds/report.hpp"

#include "pbounds/analytic_bounds.hpp"
#include "pbounds/published_tables.hpp"
#include "pbounds/reference_constants.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pbounds {

namespace {

using nlohmann::json;
using std::numbers::pi;

/// Runs body(i) for i in [0, n) on up to `workers` threads; results are written by index.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) {
                body(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_number(double x) { return std::isfinite(x) ? format_number(x) : ""; }

int degree_from_dimension(int m)
{
    for (int n = 1; n <= 8; ++n) {
        if ((n + 1) * (n + 1) * (n + 1) - 1 == m) {
            return n;
        }
    }
    throw std::invalid_argument("no 3D basis of dimension " + std::to_string(m));
}

} // namespace

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> parse_alpha_grid(const std::string& spec)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
        if (colon == std::string::npos) {
            break;
        }
        start = colon + 1;
    }
    std::vector<double> out;
    if (parts.size() == 1) {
        out.push_back(evaluate_expression(parts[0]));
    } else if (parts.size() == 3) {
        const double a = evaluate_expression(parts[0]);
        const double b = evaluate_expression(parts[1]);
        const double k = evaluate_expression(parts[2]);
        if (k < 1 || k != std::floor(k) || k > 100000) {
            throw std::invalid_argument("alpha grid count must be a positive integer");
        }
        const auto count = static_cast<int>(k);
        if (count == 1 && a != b) {
            throw std::invalid_argument("alpha grid with one point needs equal endpoints");
        }
        for (int i = 0; i < count; ++i) {
            out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
        }
    } else {
        throw std::invalid_argument("alpha grid must be A:B:K or a single angle");
    }
    for (double x : out) {
        if (!(x > 0.0 && x < pi)) {
            throw std::invalid_argument("alpha grid point " + format_number(x) + " is outside (0, pi)");
        }
    }
    return out;
}

int rational_digits_from_env(int fallback)
{
    const char* env = std::getenv("PBOUNDS_PRECISION");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 10 || v > 200) {
        throw std::invalid_argument("PBOUNDS_PRECISION must be an integer in [10, 200]");
    }
    return static_cast<int>(v);
}

// ---------------------------------------------------------------- sweeps

std::vector<Bounds2DRow> compute_bounds2d(double h, double rho, const std::vector<double>& alphas,
                                          const BasisSpec& basis, const SweepOptions& options)
{
    std::vector<Bounds2DRow> rows(alphas.size());
    parallel_for(alphas.size(), options.parallelism, [&](std::size_t i) {
        Bounds2DRow& r = rows[i];
        r.alpha = alphas[i];
        r.rho = rho;
        try {
            const Triangle2D t(h, rho, r.alpha);
            const AssembledForms forms = assemble(t, basis, options.assembly);
            r.lower_cp_t = lower_bound(forms, ConstantKind::CP_T, options.solver).constant_lower_bound;
            r.lower_cp_gamma = lower_bound(forms, ConstantKind::CP_Gamma, options.solver).constant_lower_bound;
            r.lower_ctr_gamma = lower_bound(forms, ConstantKind::CTr_Gamma, options.solver).constant_lower_bound;
            const UpperBound2D up = upper_bounds_2d(t);
            r.upper_cp_gamma = up.cp_gamma;
            r.upper_ctr_gamma = up.ctr_gamma;
            r.upper_cp_mr = up.cp_classical;
            const LiteratureBounds lit = literature_bounds(t);
            r.upper_cp_ls = lit.ls_upper / h;
            r.cheng_lower = lit.cheng_lower / h;
            r.pw_upper = lit.pw_upper / h;
        } catch (const std::exception& e) {
            r.error = "alpha=" + format_number(r.alpha) + ": " + e.what();
        }
    });
    return rows;
}

std::vector<Bounds3DRow> compute_bounds3d(double h1, double h2, double h3, double theta,
                                          const std::vector<double>& alphas, const BasisSpec& basis,
                                          const SweepOptions& options)
{
    std::vector<Bounds3DRow> rows(alphas.size());
    parallel_for(alphas.size(), options.parallelism, [&](std::size_t i) {
        Bounds3DRow& r = rows[i];
        r.alpha = alphas[i];
        r.theta = theta;
        try {
            const Tetrahedron3D t(h1, h2, h3, r.alpha, theta);
            const AssembledForms forms = assemble(t, basis, options.assembly);
            r.lower_cp_gamma = lower_bound(forms, ConstantKind::CP_Gamma, options.solver).constant_lower_bound;
            r.lower_ctr_gamma = lower_bound(forms, ConstantKind::CTr_Gamma, options.solver).constant_lower_bound;
            const UpperBound3D up = upper_bounds_3d(t);
            r.upper_cp_gamma = up.cp_gamma;
            r.upper_ctr_gamma = up.ctr_gamma;
        } catch (const std::exception& e) {
            r.error = "alpha=" + format_number(r.alpha) + ", theta=" + format_number(theta) + ": " + e.what();
        }
    });
    return rows;
}

std::string bounds2d_csv(const std::vector<Bounds2DRow>& rows)
{
    std::ostringstream os;
    os << "alpha,rho,lower_CP_T,upper_CP_MR,upper_CP_LS,lower_CP_Gamma,upper_CP_Gamma,lower_CTr_Gamma,"
          "upper_CTr_Gamma,cheng_lower,pw_upper\n";
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            os << csv_number(r.alpha) << ',' << csv_number(r.rho) << ",,,,,,,,,\n";
            continue;
        }
        os << csv_number(r.alpha) << ',' << csv_number(r.rho) << ',' << csv_number(r.lower_cp_t) << ','
           << csv_number(r.upper_cp_mr) << ',' << csv_number(r.upper_cp_ls) << ',' << csv_number(r.lower_cp_gamma)
           << ',' << csv_number(r.upper_cp_gamma) << ',' << csv_number(r.lower_ctr_gamma) << ','
           << csv_number(r.upper_ctr_gamma) << ',' << csv_number(r.cheng_lower) << ',' << csv_number(r.pw_upper)
           << '\n';
    }
    return os.str();
}

std::string bounds2d_json(const std::vector<Bounds2DRow>& rows, const BasisSpec& basis, double h)
{
    json j;
    j["schema"] = "poincare-bounds/1";
    j["kind"] = "bounds2d";
    j["h"] = h;
    j["basis"] = {{"family", to_string(basis.family)}, {"N", basis.N}, {"M", basis.size()}};
    json arr = json::array();
    for (const auto& r : rows) {
        json o{{"alpha", r.alpha}, {"rho", r.rho}};
        if (r.error.empty()) {
            o["lower_CP_T"] = number_or_null(r.lower_cp_t);
            o["upper_CP_MR"] = number_or_null(r.upper_cp_mr);
            o["upper_CP_LS"] = number_or_null(r.upper_cp_ls);
            o["lower_CP_Gamma"] = number_or_null(r.lower_cp_gamma);
            o["upper_CP_Gamma"] = number_or_null(r.upper_cp_gamma);
            o["lower_CTr_Gamma"] = number_or_null(r.lower_ctr_gamma);
            o["upper_CTr_Gamma"] = number_or_null(r.upper_ctr_gamma);
            o["cheng_lower"] = number_or_null(r.cheng_lower);
            o["pw_upper"] = number_or_null(r.pw_upper);
        } else {
            o["error"] = r.error;
        }
        arr.push_back(o);
    }
    j["rows"] = arr;
    return j.dump(2);
}

std::string bounds3d_csv(const std::vector<Bounds3DRow>& rows)
{
    std::ostringstream os;
    os << "alpha,theta,lower_CP_Gamma,upper_CP_Gamma,lower_CTr_Gamma,upper_CTr_Gamma\n";
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            os << csv_number(r.alpha) << ',' << csv_number(r.theta) << ",,,,\n";
            continue;
        }
        os << csv_number(r.alpha) << ',' << csv_number(r.theta) << ',' << csv_number(r.lower_cp_gamma) << ','
           << csv_number(r.upper_cp_gamma) << ',' << csv_number(r.lower_ctr_gamma) << ','
           << csv_number(r.upper_ctr_gamma) << '\n';
    }
    return os.str();
}

std::string bounds3d_json(const std::vector<Bounds3DRow>& rows, const BasisSpec& basis)
{
    json j;
    j["schema"] = "poincare-bounds/1";
    j["kind"] = "bounds3d";
    j["basis"] = {{"family", to_string(basis.family)}, {"N", basis.N}, {"M", basis.size()}};
    j["upper_bounds_approximate"] = true;
    json arr = json::array();
    for (const auto& r : rows) {
        json o{{"alpha", r.alpha}, {"theta", r.theta}};
        if (r.error.empty()) {
            o["lower_CP_Gamma"] = r.lower_cp_gamma;
            o["upper_CP_Gamma"] = r.upper_cp_gamma;
            o["lower_CTr_Gamma"] = r.lower_ctr_gamma;
            o["upper_CTr_Gamma"] = r.upper_ctr_gamma;
        } else {
            o["error"] = r.error;
        }
        arr.push_back(o);
    }
    j["rows"] = arr;
    return j.dump(2);
}

// ---------------------------------------------------------------- tables

namespace {

/// Forms and solutions shared between rows of one table computation.
class ShapeCache {
public:
    explicit ShapeCache(const TableOptions& o) : options_(o) {}

    const AssembledForms& forms(const Shape& shape, const BasisSpec& basis)
    {
        const std::string key = describe(shape, basis);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) {
                return it->second;
            }
        }
        AssembledForms f = assemble(shape, basis, options_.assembly);
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(key, std::move(f)).first->second;
    }

private:
    static std::string describe(const Shape& shape, const BasisSpec& basis)
    {
        std::ostringstream os;
        os << to_string(basis.family) << basis.N << '/' << basis.dimension;
        if (const auto* t = std::get_if<Triangle2D>(&shape)) {
            os << '/' << format_number(t->h()) << '/' << format_number(t->rho()) << '/' << format_number(t->alpha());
        } else {
            const auto& tet = std::get<Tetrahedron3D>(shape);
            os << '/' << format_number(tet.h1()) << '/' << format_number(tet.h2()) << '/' << format_number(tet.h3()) << '/'
               << format_number(tet.alpha()) << '/' << format_number(tet.theta());
        }
        return os.str();
    }

    const TableOptions& options_;
    std::mutex mutex_;
    std::map<std::string, AssembledForms> cache_;
};

std::vector<double> compute_row(int id, const PublishedRow& row, ShapeCache& cache, const TableOptions& o)
{
    const auto& k = row.key_values;
    switch (id) {
    case 1: {
        const BasisSpec b{BasisFamily::Monomial, static_cast<int>(k[0]), 2};
        const double zeta = root_zcot(), zhat = root_tantanh();
        const auto& leg = cache.forms(Triangle2D(1.0, 1.0, pi / 2), b);
        const auto& hyp = cache.forms(Triangle2D(1.0, std::sqrt(0.5), pi / 4), b);
        return {lower_bound(leg, ConstantKind::CP_Gamma, o.solver).constant_lower_bound * zeta,
                lower_bound(leg, ConstantKind::CTr_Gamma, o.solver).constant_lower_bound *
                    std::sqrt(zhat * std::tanh(zhat)),
                lower_bound(hyp, ConstantKind::CP_Gamma, o.solver).constant_lower_bound * 2.0 * zeta,
                lower_bound(hyp, ConstantKind::CTr_Gamma, o.solver).constant_lower_bound * std::sqrt(2.0)};
    }
    case 2: {
        const Triangle2D t(1.0, k[0], k[1]);
        const auto& f = cache.forms(t, BasisSpec{BasisFamily::Monomial, 6, 2});
        const UpperBound2D up = upper_bounds_2d(t);
        return {lower_bound(f, ConstantKind::CP_Gamma, o.solver).constant_lower_bound, up.cp_gamma,
                lower_bound(f, ConstantKind::CTr_Gamma, o.solver).constant_lower_bound, up.ctr_gamma};
    }
    case 3: {
        const auto& f = cache.forms(Triangle2D(1.0, k[0], k[1]), BasisSpec{BasisFamily::Monomial, 6, 2});
        const auto index = static_cast<std::size_t>(k[2]);
        const auto pairs = eigenpairs(f, ConstantKind::CP_T, 3, o.solver);
        return {pairs.at(index - 1).constant, pairs.at(index - 1).eigenvalue};
    }
    case 4: {
        const BasisSpec b{BasisFamily::Monomial, degree_from_dimension(static_cast<int>(k[0])), 3};
        const auto& f = cache.forms(Tetrahedron3D(1.0, 1.0, 1.0, k[1], pi / 2), b);
        return {lower_bound(f, ConstantKind::CP_Gamma, o.solver).constant_lower_bound,
                lower_bound(f, ConstantKind::CTr_Gamma, o.solver).constant_lower_bound};
    }
    case 5:
    case 6: {
        const Tetrahedron3D t(1.0, 1.0, 1.0, k[1], k[0]);
        const auto& f = cache.forms(t, BasisSpec{BasisFamily::Monomial, 4, 3});
        const UpperBound3D up = upper_bounds_3d(t);
        if (id == 5) {
            return {lower_bound(f, ConstantKind::CP_Gamma, o.solver).constant_lower_bound, up.cp_gamma};
        }
        return {lower_bound(f, ConstantKind::CTr_Gamma, o.solver).constant_lower_bound, up.ctr_gamma};
    }
    default:
        throw std::invalid_argument("table id must be 1..6");
    }
}

} // namespace

TableResult compute_table(int id, const TableOptions& options)
{
    if (id < 1 || id > 6) {
        throw std::invalid_argument("table id must be 1..6");
    }
    const PublishedTable& pub = published_table(id);
    TableResult out;
    out.id = id;
    out.key_names = pub.key_names;
    out.value_names = pub.value_names;
    out.keys.resize(pub.rows.size());
    out.computed.resize(pub.rows.size());
    out.published.resize(pub.rows.size());
    ShapeCache cache(options);
    // Rows sharing a shape are grouped on one worker so that its forms are assembled once.
    std::vector<std::vector<std::size_t>> groups;
    std::map<std::string, std::size_t> group_of;
    for (std::size_t r = 0; r < pub.rows.size(); ++r) {
        const auto& keys = pub.rows[r].keys;
        std::string g = id == 1 ? keys[0] : keys[0] + "|" + keys[1];
        auto [it, inserted] = group_of.emplace(g, groups.size());
        if (inserted) {
            groups.emplace_back();
        }
        groups[it->second].push_back(r);
    }
    parallel_for(groups.size(), options.parallelism, [&](std::size_t g) {
        for (std::size_t r : groups[g]) {
            out.keys[r] = pub.rows[r].keys;
            out.published[r] = pub.rows[r].values;
            out.computed[r] = compute_row(id, pub.rows[r], cache, options);
        }
    });
    return out;
}

std::string table_csv(const TableResult& t)
{
    std::ostringstream os;
    for (const auto& k : t.key_names) {
        os << k << ',';
    }
    for (std::size_t c = 0; c < t.value_names.size(); ++c) {
        os << t.value_names[c] << (c + 1 < t.value_names.size() ? "," : "\n");
    }
    for (std::size_t r = 0; r < t.keys.size(); ++r) {
        for (const auto& k : t.keys[r]) {
            os << k << ',';
        }
        for (std::size_t c = 0; c < t.computed[r].size(); ++c) {
            os << format_number(t.computed[r][c]) << (c + 1 < t.computed[r].size() ? "," : "\n");
        }
    }
    return os.str();
}

std::string table_diff_csv(const TableResult& t)
{
    std::ostringstream os;
    for (const auto& k : t.key_names) {
        os << k << ',';
    }
    os << "column,computed,published,abs_deviation,rel_deviation\n";
    for (std::size_t r = 0; r < t.keys.size(); ++r) {
        for (std::size_t c = 0; c < t.value_names.size(); ++c) {
            for (const auto& k : t.keys[r]) {
                os << k << ',';
            }
            const double a = t.computed[r][c], p = t.published[r][c];
            os << t.value_names[c] << ',' << format_number(a) << ',' << format_number(p) << ','
               << format_number(std::abs(a - p)) << ',' << format_number(std::abs(a - p) / std::abs(p)) << '\n';
        }
    }
    return os.str();
}

std::string table_json(const TableResult& t)
{
    json j;
    j["schema"] = "poincare-bounds/1";
    j["kind"] = "table";
    j["table"] = t.id;
    j["keys"] = t.key_names;
    j["columns"] = t.value_names;
    json rows = json::array();
    for (std::size_t r = 0; r < t.keys.size(); ++r) {
        rows.push_back({{"keys", t.keys[r]}, {"computed", t.computed[r]}, {"published", t.published[r]}});
    }
    j["rows"] = rows;
    return j.dump(2);
}

// ---------------------------------------------------------------- eigenfunctions

std::string sampled_field_json(const SampledField& field, double eigenvalue, double constant)
{
    json j;
    j["schema"] = "poincare-bounds/1";
    j["kind"] = "eigenfunction";
    j["eigenvalue"] = eigenvalue;
    j["constant"] = constant;
    j["resolution"] = field.resolution;
    j["normalization"] = field.normalization == Normalization::MaxOne ? "max_one" : "l2_unit";
    j["points"] = field.points.size();
    return j.dump(2);
}

std::string field_svg(const SampledField& field, const std::string& title)
{
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : field.points) {
        xmin = std::min(xmin, p.cartesian[0]);
        xmax = std::max(xmax, p.cartesian[0]);
        ymin = std::min(ymin, p.cartesian[1]);
        ymax = std::max(ymax, p.cartesian[1]);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
    const double size = 400.0, margin = 20.0, scale = (size - 2 * margin) / span;
    const double radius = std::max(1.0, 0.45 * scale * span / std::max(field.resolution, 1));
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" height=\"400\">\n";
    os << "<title>" << title << "</title>\n<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
    char buf[160];
    for (const auto& p : field.points) {
        // Diverging map: -1 blue, 0 white, +1 red.
        const double v = std::clamp(p.value, -1.0, 1.0);
        const int r = v >= 0 ? 255 : static_cast<int>(std::lround(255 * (1 + v)));
        const int b = v <= 0 ? 255 : static_cast<int>(std::lround(255 * (1 - v)));
        const int g = static_cast<int>(std::lround(255 * (1 - std::abs(v))));
        const double cx = margin + (p.cartesian[0] - xmin) * scale;
        const double cy = size - margin - (p.cartesian[1] - ymin) * scale;
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"rgb(%d,%d,%d)\"/>\n", cx, cy,
                      radius, r, g, b);
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace pbounds
