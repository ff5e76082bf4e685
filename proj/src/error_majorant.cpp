#include "pbounds/error_majorant.hpp"

#include "pbounds/analytic_bounds.hpp"
#include "pbounds/exact_integration.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace pbounds {

namespace {

using nlohmann::json;

Rational dot(const RationalPoint<2>& a, const RationalPoint<2>& b) { return a[0] * b[0] + a[1] * b[1]; }

RationalPoint<2> sub(const RationalPoint<2>& a, const RationalPoint<2>& b) { return {a[0] - b[0], a[1] - b[1]}; }

Polynomial2 normal_component(const FluxPolynomial& q, const RationalPoint<2>& n) { return q[0] * n[0] + q[1] * n[1]; }

Polynomial2 divergence(const FluxPolynomial& q) { return q[0].derivative(0) + q[1].derivative(1); }

/// (dy, -dx) of a->b, flipped to point away from `inside`.
RationalPoint<2> outward_scaled_normal(const RationalPoint<2>& a, const RationalPoint<2>& b,
                                       const RationalPoint<2>& inside)
{
    RationalPoint<2> n{b[1] - a[1], a[0] - b[0]};
    if (dot(n, sub(inside, a)) > 0) {
        n = {-n[0], -n[1]};
    }
    return n;
}

RationalPoint<2> centroid(const RationalSimplex<2>& s)
{
    return {(s.vertices[0][0] + s.vertices[1][0] + s.vertices[2][0]) / 3,
            (s.vertices[0][1] + s.vertices[1][1] + s.vertices[2][1]) / 3};
}

Point<2> to_point(const RationalPoint<2>& p) { return {p[0].get_d(), p[1].get_d()}; }

/// Largest |value| of a polynomial along a segment, sampled at degree + 1 points.
double max_on_segment(const Polynomial2& p, const RationalPoint<2>& a, const RationalPoint<2>& b)
{
    const int n = std::max(p.total_degree(), 0) + 1;
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const Rational t(k, n);
        const RationalPoint<2> x{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
        worst = std::max(worst, std::abs(p.evaluate(x).get_d()));
    }
    return worst;
}

Rational parse_rational(const json& j, int digits, const std::string& where)
{
    if (j.is_number_integer()) {
        return Rational(std::to_string(j.get<long long>()));
    }
    if (j.is_number()) {
        return rationalize(j.get<double>(), digits);
    }
    if (j.is_string()) {
        try {
            Rational r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::exception&) {
        }
    }
    throw InputError(where + ": expected a number or a rational string \"p/q\"");
}

std::size_t parse_index(const json& j, std::size_t bound, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0 || static_cast<std::size_t>(j.get<long long>()) >= bound) {
        throw InputError(where + ": expected an index in [0, " + std::to_string(bound) + ")");
    }
    return static_cast<std::size_t>(j.get<long long>());
}

Polynomial2 parse_polynomial(const json& j, int digits, const std::string& where)
{
    if (!j.is_array()) {
        throw InputError(where + ": polynomial must be a list of [a, b, coeff] triples");
    }
    Polynomial2 p;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const json& term = j[t];
        const std::string w = where + "[" + std::to_string(t) + "]";
        if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() || !term[1].is_number_integer() ||
            term[0].get<int>() < 0 || term[1].get<int>() < 0) {
            throw InputError(w + ": expected [a, b, coeff] with non-negative integer exponents");
        }
        p.add_term({term[0].get<int>(), term[1].get<int>()}, parse_rational(term[2], digits, w + "[2]"));
    }
    return p;
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

const json& require(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

bool separated(const std::array<Point<2>, 3>& a, const std::array<Point<2>, 3>& b, double tol)
{
    for (const auto* tri : {&a, &b}) {
        for (std::size_t k = 0; k < 3; ++k) {
            const Point<2>& p = (*tri)[k];
            const Point<2>& q = (*tri)[(k + 1) % 3];
            const double nx = q[1] - p[1], ny = p[0] - q[0];
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (const auto& v : a) {
                const double s = nx * v[0] + ny * v[1];
                amin = std::min(amin, s);
                amax = std::max(amax, s);
            }
            for (const auto& v : b) {
                const double s = nx * v[0] + ny * v[1];
                bmin = std::min(bmin, s);
                bmax = std::max(bmax, s);
            }
            if (amax <= bmin + tol * std::hypot(nx, ny) || bmax <= amin + tol * std::hypot(nx, ny)) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::string to_string(EdgeTag tag)
{
    switch (tag) {
    case EdgeTag::Interior:
        return "interior";
    case EdgeTag::Dirichlet:
        return "dirichlet";
    case EdgeTag::Neumann:
        return "neumann";
    }
    return "?";
}

// ---------------------------------------------------------------- mesh

DecomposedDomain::DecomposedDomain(std::vector<RationalPoint<2>> vertices,
                                   std::vector<std::array<std::size_t, 3>> subdomains, std::vector<MeshEdge> edges)
    : vertices_(std::move(vertices)), subdomains_(std::move(subdomains)), edges_(std::move(edges)),
      adjacency_(subdomains_.size())
{
    if (subdomains_.empty()) {
        throw InputError("mesh: no subdomains");
    }
    for (std::size_t i = 0; i < subdomains_.size(); ++i) {
        for (std::size_t v : subdomains_[i]) {
            if (v >= vertices_.size()) {
                throw InputError("mesh: subdomain " + std::to_string(i) + " references a missing vertex");
            }
        }
        const auto& s = simplex(i).vertices;
        const Rational cross = (s[1][0] - s[0][0]) * (s[2][1] - s[0][1]) - (s[1][1] - s[0][1]) * (s[2][0] - s[0][0]);
        if (cross == 0) {
            throw InputError("mesh: subdomain " + std::to_string(i) + " is degenerate");
        }
    }
    using Key = std::pair<std::size_t, std::size_t>;
    auto key = [](std::size_t a, std::size_t b) { return Key{std::min(a, b), std::max(a, b)}; };
    std::map<Key, std::vector<std::size_t>> owners;
    for (std::size_t i = 0; i < subdomains_.size(); ++i) {
        const auto& t = subdomains_[i];
        for (std::size_t k = 0; k < 3; ++k) {
            owners[key(t[k], t[(k + 1) % 3])].push_back(i);
        }
    }
    std::map<Key, std::size_t> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const MeshEdge& edge = edges_[e];
        const std::string where = "mesh: edge " + std::to_string(e);
        const Key k = key(edge.v[0], edge.v[1]);
        const auto it = owners.find(k);
        if (it == owners.end()) {
            throw InputError(where + " is not a side of any subdomain");
        }
        if (!seen.emplace(k, e).second) {
            throw InputError(where + " is listed twice");
        }
        std::vector<std::size_t> expect = it->second;
        std::vector<std::size_t> given{edge.left};
        if (edge.right) {
            given.push_back(*edge.right);
        }
        std::sort(expect.begin(), expect.end());
        std::sort(given.begin(), given.end());
        if (expect != given) {
            throw InputError(where + ": left/right do not match the subdomains sharing it");
        }
        if ((edge.tag == EdgeTag::Interior) != (given.size() == 2)) {
            throw InputError(where + ": interior edges need two subdomains, boundary edges one");
        }
        if (edge.tag == EdgeTag::Neumann && !edge.F) {
            throw InputError(where + ": Neumann edge without F");
        }
        for (std::size_t s : given) {
            adjacency_[s].push_back(e);
        }
    }
    if (seen.size() != owners.size()) {
        throw InputError("mesh: " + std::to_string(owners.size() - seen.size()) + " subdomain sides have no edge entry");
    }
    for (std::size_t i = 0; i < subdomains_.size(); ++i) {
        for (std::size_t j = i + 1; j < subdomains_.size(); ++j) {
            if (!separated(triangle(i), triangle(j), 1e-12)) {
                throw InputError("mesh: subdomains " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
            }
        }
    }
}

RationalSimplex<2> DecomposedDomain::simplex(std::size_t i) const
{
    RationalSimplex<2> s;
    for (std::size_t k = 0; k < 3; ++k) {
        s.vertices[k] = vertices_[subdomains_[i][k]];
    }
    return s;
}

std::array<Point<2>, 3> DecomposedDomain::triangle(std::size_t i) const
{
    const auto s = simplex(i);
    return {to_point(s.vertices[0]), to_point(s.vertices[1]), to_point(s.vertices[2])};
}

double DecomposedDomain::edge_length(std::size_t e) const
{
    const auto d = sub(vertices_[edges_[e].v[1]], vertices_[edges_[e].v[0]]);
    return std::sqrt(dot(d, d).get_d());
}

RationalPoint<2> DecomposedDomain::scaled_normal(std::size_t e) const
{
    const MeshEdge& edge = edges_[e];
    std::size_t from = edge.left;
    if (edge.right) {
        from = std::min(edge.left, *edge.right);
    }
    return outward_scaled_normal(vertices_[edge.v[0]], vertices_[edge.v[1]], centroid(simplex(from)));
}

// ---------------------------------------------------------------- data

void ProblemData::validate(std::size_t subdomain_count) const
{
    if (A.size() != subdomain_count || f.size() != subdomain_count) {
        throw InputError("data: A and f need one entry per subdomain");
    }
    if (!(lambda1 > 0)) {
        throw InputError("data: lambda1 must be positive");
    }
    if (rho < 0) {
        throw InputError("data: rho must be non-negative");
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto& a = A[i];
        if (a[0][1] != a[1][0]) {
            throw InputError("data: A of subdomain " + std::to_string(i) + " is not symmetric");
        }
        // Smallest eigenvalue >= lambda1  <=>  A - lambda1 I positive semidefinite.
        const Rational p = a[0][0] - lambda1, q = a[1][1] - lambda1;
        if (p < 0 || q < 0 || p * q - a[0][1] * a[0][1] < 0) {
            throw InputError("data: A of subdomain " + std::to_string(i) + " has an eigenvalue below lambda1");
        }
    }
}

void validate_fields(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh)
{
    const std::size_t n = mesh.subdomains().size();
    if (fields.v.size() != n || fields.q.size() != n) {
        throw InputError("fields: v and q need one entry per subdomain");
    }
    data.validate(n);
    const Polynomial2 zero;
    for (std::size_t e = 0; e < mesh.edges().size(); ++e) {
        const MeshEdge& edge = mesh.edges()[e];
        const auto& a = mesh.vertices()[edge.v[0]];
        const auto& b = mesh.vertices()[edge.v[1]];
        Polynomial2 diff;
        std::string what;
        if (edge.tag == EdgeTag::Interior) {
            diff = fields.v[edge.left] - fields.v[*edge.right];
            what = "v is discontinuous across edge ";
        } else if (edge.tag == EdgeTag::Dirichlet) {
            diff = fields.v[edge.left] - (data.u_D ? *data.u_D : zero);
            what = "v misses the Dirichlet data on edge ";
        } else {
            continue;
        }
        if (max_on_segment(diff, a, b) > 1e-10) {
            throw InputError("fields: " + what + std::to_string(e));
        }
    }
}

// ---------------------------------------------------------------- admissibility

std::string AdmissibilityReport::describe() const
{
    std::ostringstream os;
    os.precision(6);
    for (std::size_t k = 0; k < violations.size(); ++k) {
        if (k != 0) {
            os << "; ";
        }
        os << violations[k].condition << " violated on " << violations[k].location << " (mean " << violations[k].mean
           << ")";
    }
    return os.str();
}

InadmissibleFlux::InadmissibleFlux(AdmissibilityReport r)
    : std::runtime_error("inadmissible flux: " + r.describe()), report(std::move(r))
{
}

AdmissibilityReport check_admissibility(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh,
                                        const AdmissibilityOptions& options)
{
    AdmissibilityReport rep;
    const std::size_t ne = mesh.edges().size();
    rep.interior_means.assign(ne, 0.0);
    rep.neumann_means.assign(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        const MeshEdge& edge = mesh.edges()[e];
        const auto& a = mesh.vertices()[edge.v[0]];
        const auto& b = mesh.vertices()[edge.v[1]];
        const auto n = mesh.scaled_normal(e);
        const double len = mesh.edge_length(e);
        if (edge.tag == EdgeTag::Interior) {
            const std::size_t lo = std::min(edge.left, *edge.right), hi = std::max(edge.left, *edge.right);
            FluxPolynomial jump{fields.q[lo][0] - fields.q[hi][0], fields.q[lo][1] - fields.q[hi][1]};
            // Integral of jump . n ds equals the mean of jump . (scaled normal) over t in [0,1].
            const double mean = segment_mean(normal_component(jump, n), a, b).get_d() / len;
            rep.interior_means[e] = mean;
            if (!(std::abs(mean) <= options.tolerance)) {
                rep.violations.push_back({"interior-edge-mean", "edge " + std::to_string(e), mean});
            }
        } else if (edge.tag == EdgeTag::Neumann) {
            const double flux = segment_mean(normal_component(fields.q[edge.left], n), a, b).get_d();
            const double mean = (flux - len * segment_mean(*edge.F, a, b).get_d()) / len;
            rep.neumann_means[e] = mean;
            if (!(std::abs(mean) <= options.tolerance)) {
                rep.violations.push_back({"neumann-edge-mean", "edge " + std::to_string(e), mean});
            }
        }
    }
    const Rational rho2 = data.rho * data.rho;
    for (std::size_t i = 0; i < mesh.subdomains().size(); ++i) {
        const auto s = mesh.simplex(i);
        const Polynomial2 r = divergence(fields.q[i]) + data.f[i] - fields.v[i] * rho2;
        const Rational area = integrate_polynomial<2>(Polynomial2(Rational(1)), s);
        const double mean = Rational(integrate_polynomial<2>(r, s) / area).get_d();
        rep.residual_means.push_back(mean);
        if (!(std::abs(mean) <= options.tolerance)) {
            rep.violations.push_back({"subdomain-residual-mean", "subdomain " + std::to_string(i), mean});
        }
    }
    return rep;
}

// ---------------------------------------------------------------- norms

ResidualNorms residual_norms(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh)
{
    validate_fields(fields, data, mesh);
    ResidualNorms out;
    const Rational rho2 = data.rho * data.rho;
    Rational d2(0);
    for (std::size_t i = 0; i < mesh.subdomains().size(); ++i) {
        const auto s = mesh.simplex(i);
        const auto& A = data.A[i];
        const Polynomial2 vx = fields.v[i].derivative(0), vy = fields.v[i].derivative(1);
        const Polynomial2 dx = vx * A[0][0] + vy * A[0][1] - fields.q[i][0];
        const Polynomial2 dy = vx * A[1][0] + vy * A[1][1] - fields.q[i][1];
        const Rational det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        // d . A^{-1} d with A^{-1} = adj(A) / det.
        const Polynomial2 form = (dx * dx * A[1][1] - dx * dy * (A[0][1] + A[1][0]) + dy * dy * A[0][0]) * (1 / det);
        d2 += integrate_polynomial<2>(form, s);
        const Polynomial2 r = divergence(fields.q[i]) + data.f[i] - fields.v[i] * rho2;
        out.r_norms.push_back(std::sqrt(integrate_polynomial<2>(r * r, s).get_d()));
    }
    out.d_norm = std::sqrt(d2.get_d());
    const std::size_t ne = mesh.edges().size();
    out.r_ij.assign(ne, 0.0);
    out.rho_k.assign(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        const MeshEdge& edge = mesh.edges()[e];
        const auto& a = mesh.vertices()[edge.v[0]];
        const auto& b = mesh.vertices()[edge.v[1]];
        const auto n = mesh.scaled_normal(e);
        const double len = mesh.edge_length(e);
        if (edge.tag == EdgeTag::Interior) {
            const std::size_t lo = std::min(edge.left, *edge.right), hi = std::max(edge.left, *edge.right);
            const Polynomial2 w = normal_component({fields.q[lo][0] - fields.q[hi][0], fields.q[lo][1] - fields.q[hi][1]}, n);
            out.r_ij[e] = std::sqrt(segment_mean(w * w, a, b).get_d() / len);
        } else if (edge.tag == EdgeTag::Neumann) {
            // q.n - F = (w - len F) / len with w = q . (scaled normal); ds = len dt.
            const Polynomial2 w = normal_component(fields.q[edge.left], n);
            const Polynomial2& F = *edge.F;
            const double sq = segment_mean(w * w, a, b).get_d() / len - 2.0 * segment_mean(w * F, a, b).get_d() +
                              len * segment_mean(F * F, a, b).get_d();
            out.rho_k[e] = std::sqrt(std::max(sq, 0.0));
        }
    }
    return out;
}

double triangle_trace_constant_max(const std::array<Point<2>, 3>& tri)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        double best = std::numeric_limits<double>::infinity();
        for (int flip = 0; flip < 2; ++flip) {
            const Point<2>& a = tri[flip == 0 ? k : (k + 1) % 3];
            const Point<2>& b = tri[flip == 0 ? (k + 1) % 3 : k];
            const Point<2>& c = tri[(k + 2) % 3];
            const double dx = b[0] - a[0], dy = b[1] - a[1];
            const double wx = c[0] - a[0], wy = c[1] - a[1];
            const double h = std::hypot(dx, dy);
            const double along = (dx * wx + dy * wy) / h;
            const double across = std::abs(dx * wy - dy * wx) / h;
            const Triangle2D t(h, std::hypot(along, across) / h, std::atan2(across, along));
            best = std::min(best, upper_bounds_2d(t).ctr_gamma * std::sqrt(h));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

MajorantReport majorant(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh,
                        const MajorantOptions& options)
{
    validate_fields(fields, data, mesh);
    MajorantReport rep;
    rep.admissibility = check_admissibility(fields, data, mesh, options.admissibility);
    if (!rep.admissibility.admissible()) {
        throw InadmissibleFlux(rep.admissibility);
    }
    rep.norms = residual_norms(fields, data, mesh);
    double re1_sq = 0.0, re2_sq = 0.0;
    for (std::size_t i = 0; i < mesh.subdomains().size(); ++i) {
        const auto tri = mesh.triangle(i);
        const double diam = triangle_metrics(tri).diameter;
        rep.diameters.push_back(diam);
        re1_sq += std::pow(diam / std::numbers::pi * rep.norms.r_norms[i], 2);
        double eta_sq = 0.0;
        int terms = 0;
        for (std::size_t e : mesh.edges_of(i)) {
            const EdgeTag tag = mesh.edges()[e].tag;
            if (tag == EdgeTag::Interior) {
                eta_sq += 0.25 * rep.norms.r_ij[e] * rep.norms.r_ij[e];
                ++terms;
            } else if (tag == EdgeTag::Neumann) {
                eta_sq += rep.norms.rho_k[e] * rep.norms.rho_k[e];
                ++terms;
            }
        }
        if (options.edge_count_weighting) {
            eta_sq *= std::max(terms, 1);
        }
        const double c = triangle_trace_constant_max(tri);
        rep.ctr_max.push_back(c);
        rep.eta.push_back(std::sqrt(eta_sq));
        re2_sq += c * c * eta_sq;
    }
    rep.re1 = std::sqrt(re1_sq);
    rep.re2 = std::sqrt(re2_sq);
    const double l1 = data.lambda1.get_d();
    rep.total = rep.norms.d_norm + (rep.re1 + rep.re2) / (options.sqrt_lambda1 ? std::sqrt(l1) : l1);
    return rep;
}

double global_majorant(const Fields& fields, const ProblemData& data, const DecomposedDomain& mesh, double c1, double c2)
{
    const ResidualNorms n = residual_norms(fields, data, mesh);
    for (std::size_t e = 0; e < n.r_ij.size(); ++e) {
        if (n.r_ij[e] != 0.0) {
            throw InputError("global_majorant: flux normal component jumps across edge " + std::to_string(e));
        }
    }
    double r2 = 0.0, g2 = 0.0;
    for (double r : n.r_norms) {
        r2 += r * r;
    }
    for (double r : n.rho_k) {
        g2 += r * r;
    }
    return n.d_norm + c1 * std::sqrt(r2) + c2 * std::sqrt(g2);
}

double true_error(const Fields& fields, const Polynomial2& u_exact, const ProblemData& data,
                  const DecomposedDomain& mesh)
{
    const Rational rho2 = data.rho * data.rho;
    Rational total(0);
    for (std::size_t i = 0; i < mesh.subdomains().size(); ++i) {
        const Polynomial2 e = u_exact - fields.v[i];
        const Polynomial2 ex = e.derivative(0), ey = e.derivative(1);
        const auto& A = data.A[i];
        const Polynomial2 energy =
            ex * ex * A[0][0] + ex * ey * (A[0][1] + A[1][0]) + ey * ey * A[1][1] + e * e * rho2;
        total += integrate_polynomial<2>(energy, mesh.simplex(i));
    }
    return std::sqrt(total.get_d());
}

// ---------------------------------------------------------------- JSON

Polynomial2 parse_polynomial_json(const std::string& text, int digits)
{
    return parse_polynomial(parse_json(text, "polynomial"), digits, "polynomial");
}

MajorantProblem parse_mesh_json(const std::string& text, int digits)
{
    const json j = parse_json(text, "mesh");
    const json& jv = require(j, "vertices", "mesh");
    if (!jv.is_array()) {
        throw InputError("mesh.vertices: expected a list of [x, y]");
    }
    std::vector<RationalPoint<2>> vertices;
    for (std::size_t k = 0; k < jv.size(); ++k) {
        const std::string w = "mesh.vertices[" + std::to_string(k) + "]";
        if (!jv[k].is_array() || jv[k].size() != 2) {
            throw InputError(w + ": expected [x, y]");
        }
        vertices.push_back({parse_rational(jv[k][0], digits, w), parse_rational(jv[k][1], digits, w)});
    }
    const json& js = require(j, "subdomains", "mesh");
    if (!js.is_array()) {
        throw InputError("mesh.subdomains: expected a list of [i, j, k]");
    }
    std::vector<std::array<std::size_t, 3>> subdomains;
    for (std::size_t k = 0; k < js.size(); ++k) {
        const std::string w = "mesh.subdomains[" + std::to_string(k) + "]";
        if (!js[k].is_array() || js[k].size() != 3) {
            throw InputError(w + ": expected [i, j, k]");
        }
        subdomains.push_back({parse_index(js[k][0], vertices.size(), w), parse_index(js[k][1], vertices.size(), w),
                              parse_index(js[k][2], vertices.size(), w)});
    }
    const json& je = require(j, "edges", "mesh");
    if (!je.is_array()) {
        throw InputError("mesh.edges: expected a list of edge objects");
    }
    std::vector<MeshEdge> edges;
    for (std::size_t k = 0; k < je.size(); ++k) {
        const std::string w = "mesh.edges[" + std::to_string(k) + "]";
        const json& e = je[k];
        MeshEdge edge;
        const json& v = require(e, "v", w);
        if (!v.is_array() || v.size() != 2) {
            throw InputError(w + ".v: expected [a, b]");
        }
        edge.v = {parse_index(v[0], vertices.size(), w + ".v"), parse_index(v[1], vertices.size(), w + ".v")};
        const json& tag = require(e, "tag", w);
        const std::string t = tag.is_string() ? tag.get<std::string>() : "";
        if (t == "interior") {
            edge.tag = EdgeTag::Interior;
        } else if (t == "dirichlet") {
            edge.tag = EdgeTag::Dirichlet;
        } else if (t == "neumann") {
            edge.tag = EdgeTag::Neumann;
        } else {
            throw InputError(w + ".tag: expected interior, dirichlet or neumann");
        }
        edge.left = parse_index(require(e, "left", w), subdomains.size(), w + ".left");
        if (e.contains("right") && !e.at("right").is_null()) {
            edge.right = parse_index(e.at("right"), subdomains.size(), w + ".right");
        }
        if (e.contains("F") && !e.at("F").is_null()) {
            edge.F = parse_polynomial(e.at("F"), digits, w + ".F");
        }
        edges.push_back(std::move(edge));
    }
    const json& jd = require(j, "data", "mesh");
    ProblemData data;
    const json& ja = require(jd, "A", "mesh.data");
    if (!ja.is_array()) {
        throw InputError("mesh.data.A: expected one 2x2 matrix per subdomain");
    }
    for (std::size_t k = 0; k < ja.size(); ++k) {
        const std::string w = "mesh.data.A[" + std::to_string(k) + "]";
        if (!ja[k].is_array() || ja[k].size() != 2 || !ja[k][0].is_array() || ja[k][0].size() != 2 ||
            !ja[k][1].is_array() || ja[k][1].size() != 2) {
            throw InputError(w + ": expected [[a11, a12], [a21, a22]]");
        }
        std::array<std::array<Rational, 2>, 2> a;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                a[r][c] = parse_rational(ja[k][r][c], digits, w);
            }
        }
        data.A.push_back(a);
    }
    data.rho = parse_rational(require(jd, "rho", "mesh.data"), digits, "mesh.data.rho");
    const json& jf = require(jd, "f", "mesh.data");
    if (!jf.is_array()) {
        throw InputError("mesh.data.f: expected one polynomial per subdomain");
    }
    for (std::size_t k = 0; k < jf.size(); ++k) {
        data.f.push_back(parse_polynomial(jf[k], digits, "mesh.data.f[" + std::to_string(k) + "]"));
    }
    data.lambda1 = parse_rational(require(jd, "lambda1", "mesh.data"), digits, "mesh.data.lambda1");
    if (jd.contains("u_D") && !jd.at("u_D").is_null()) {
        data.u_D = parse_polynomial(jd.at("u_D"), digits, "mesh.data.u_D");
    }
    DecomposedDomain mesh(std::move(vertices), std::move(subdomains), std::move(edges));
    data.validate(mesh.subdomains().size());
    return {std::move(mesh), std::move(data)};
}

FieldInput parse_fields_json(const std::string& text, std::size_t subdomain_count, int digits)
{
    const json j = parse_json(text, "fields");
    FieldInput in;
    const json& jv = require(j, "v", "fields");
    const json& jq = require(j, "q", "fields");
    if (!jv.is_array() || jv.size() != subdomain_count) {
        throw InputError("fields.v: expected " + std::to_string(subdomain_count) + " polynomials");
    }
    if (!jq.is_array() || jq.size() != subdomain_count) {
        throw InputError("fields.q: expected " + std::to_string(subdomain_count) + " [qx, qy] pairs");
    }
    for (std::size_t k = 0; k < subdomain_count; ++k) {
        const std::string w = "[" + std::to_string(k) + "]";
        in.fields.v.push_back(parse_polynomial(jv[k], digits, "fields.v" + w));
        if (!jq[k].is_array() || jq[k].size() != 2) {
            throw InputError("fields.q" + w + ": expected [qx, qy]");
        }
        in.fields.q.push_back({parse_polynomial(jq[k][0], digits, "fields.q" + w + "[0]"),
                               parse_polynomial(jq[k][1], digits, "fields.q" + w + "[1]")});
    }
    if (j.contains("u_exact") && !j.at("u_exact").is_null()) {
        in.u_exact = parse_polynomial(j.at("u_exact"), digits, "fields.u_exact");
    }
    return in;
}

std::string report_to_json(const MajorantReport& r)
{
    json j;
    j["schema"] = "poincare-bounds/1";
    j["kind"] = "majorant";
    j["d_norm"] = r.norms.d_norm;
    j["r_norms"] = r.norms.r_norms;
    j["r_ij"] = r.norms.r_ij;
    j["rho_k"] = r.norms.rho_k;
    j["diameters"] = r.diameters;
    j["ctr_max"] = r.ctr_max;
    j["eta"] = r.eta;
    j["re1"] = r.re1;
    j["re2"] = r.re2;
    j["total"] = r.total;
    j["admissible"] = r.admissibility.admissible();
    json v = json::array();
    for (const auto& x : r.admissibility.violations) {
        v.push_back({{"condition", x.condition}, {"location", x.location}, {"mean", x.mean}});
    }
    j["violations"] = v;
    j["true_error"] = r.true_error ? json(*r.true_error) : json(nullptr);
    j["efficiency"] = r.efficiency ? json(*r.efficiency) : json(nullptr);
    return j.dump(2);
}

// ---------------------------------------------------------------- manufactured problem

ManufacturedProblem manufactured_four_triangles()
{
    const Rational half(1, 2);
    std::vector<RationalPoint<2>> vertices{
        {Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
        {Rational(0), Rational(1)}, {half, half}};
    std::vector<std::array<std::size_t, 3>> subdomains{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    const Polynomial2 x = Polynomial2::variable(0), y = Polynomial2::variable(1);
    const Polynomial2 one(Rational(1));
    std::vector<MeshEdge> edges;
    edges.push_back({{0, 4}, EdgeTag::Interior, 0, 3, std::nullopt});
    edges.push_back({{1, 4}, EdgeTag::Interior, 0, 1, std::nullopt});
    edges.push_back({{2, 4}, EdgeTag::Interior, 1, 2, std::nullopt});
    edges.push_back({{3, 4}, EdgeTag::Interior, 2, 3, std::nullopt});
    edges.push_back({{0, 1}, EdgeTag::Dirichlet, 0, std::nullopt, std::nullopt});
    edges.push_back({{1, 2}, EdgeTag::Neumann, 1, std::nullopt, y * y - y});
    edges.push_back({{2, 3}, EdgeTag::Dirichlet, 2, std::nullopt, std::nullopt});
    edges.push_back({{3, 0}, EdgeTag::Dirichlet, 3, std::nullopt, std::nullopt});
    DecomposedDomain mesh(std::move(vertices), std::move(subdomains), std::move(edges));

    const Polynomial2 u = x * (one - x) * y * (one - y);
    ProblemData data;
    std::array<std::array<Rational, 2>, 2> identity{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
    const Polynomial2 f = x * (one - x) * Rational(2) + y * (one - y) * Rational(2);
    data.A.assign(4, identity);
    data.f.assign(4, f);
    data.rho = 0;
    data.lambda1 = 1;

    Fields exact;
    exact.v.assign(4, u);
    exact.q.assign(4, FluxPolynomial{u.derivative(0), u.derivative(1)});
    Fields interp = exact;
    const Rational eighth(1, 8);
    interp.v = {y * eighth, (one - x) * eighth, (one - y) * eighth, x * eighth};
    return {std::move(mesh), std::move(data), u, std::move(exact), std::move(interp)};
}

FluxPolynomial rt0_basis(const RationalSimplex<2>& t, int k)
{
    const auto& p = t.vertices[static_cast<std::size_t>(k)];
    const auto& v = t.vertices;
    const Rational area = abs((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0])) / 2;
    const Rational s = 1 / (2 * area);
    return {(Polynomial2::variable(0) - Polynomial2(p[0])) * s, (Polynomial2::variable(1) - Polynomial2(p[1])) * s};
}

std::vector<FluxPolynomial> admissible_perturbation(const DecomposedDomain& mesh, int degree, double amplitude,
                                                    std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
    std::vector<FluxPolynomial> out;
    for (std::size_t i = 0; i < mesh.subdomains().size(); ++i) {
        FluxPolynomial dq;
        for (auto& comp : dq) {
            for (int a = 0; a <= degree; ++a) {
                for (int b = 0; a + b <= degree; ++b) {
                    comp.add_term({a, b}, rationalize(coeff(rng), 17));
                }
            }
        }
        const auto s = mesh.simplex(i);
        for (int k = 0; k < 3; ++k) {
            const auto& a = s.vertices[static_cast<std::size_t>((k + 1) % 3)];
            const auto& b = s.vertices[static_cast<std::size_t>((k + 2) % 3)];
            const auto n = outward_scaled_normal(a, b, s.vertices[static_cast<std::size_t>(k)]);
            const Rational flux = segment_mean(normal_component(dq, n), a, b);
            const FluxPolynomial phi = rt0_basis(s, k);
            dq[0] -= phi[0] * flux;
            dq[1] -= phi[1] * flux;
        }
        out.push_back(std::move(dq));
    }
    return out;
}

} // namespace pbounds
