#include "pbounds/rayleigh_eigensolver.hpp"

#include "pbounds/exact_integration.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pbounds {

namespace {

using std::numbers::pi;

// ---------------------------------------------------------------- assembly

AssembledForms allocate(const BasisSpec& basis, double length_scale, bool exact)
{
    const std::size_t n = basis.size();
    AssembledForms f;
    f.basis = basis;
    f.exact = exact;
    f.length_scale = length_scale;
    f.K = Matrix<Rational>(n, n);
    f.M_vol = Matrix<Rational>(n, n);
    f.M_tr = Matrix<Rational>(n, n);
    f.m.assign(n, Rational(0));
    f.g.assign(n, Rational(0));
    return f;
}

AssembledForms assemble_monomial_2d(const Triangle2D& t, const BasisSpec& basis, const AssemblyOptions& opt)
{
    const RationalSimplex<2> simplex = t.rationalized(opt.rational_digits);
    const int top = 2 * basis.N;
    const MomentTable<2> mom(simplex, top);
    // Integrals of x^a over Gamma = [0, h].
    const Rational& h = simplex.vertices[1][0];
    std::vector<Rational> gm(static_cast<std::size_t>(top) + 1);
    Rational hp = h;
    for (int a = 0; a <= top; ++a) {
        gm[static_cast<std::size_t>(a)] = hp / (a + 1);
        hp *= h;
    }
    AssembledForms f = allocate(basis, t.h(), true);
    const auto idx = basis.indices();
    const std::size_t n = idx.size();
    for (std::size_t p = 0; p < n; ++p) {
        const int i = idx[p][0], j = idx[p][1];
        f.m[p] = mom({i, j});
        f.g[p] = j == 0 ? gm[static_cast<std::size_t>(i)] : Rational(0);
        for (std::size_t q = p; q < n; ++q) {
            const int k = idx[q][0], l = idx[q][1];
            Rational kv(0);
            if (i * k != 0) {
                kv += i * k * mom({i + k - 2, j + l});
            }
            if (j * l != 0) {
                kv += j * l * mom({i + k, j + l - 2});
            }
            f.K(p, q) = kv;
            f.K(q, p) = kv;
            f.M_vol(p, q) = mom({i + k, j + l});
            f.M_vol(q, p) = f.M_vol(p, q);
            const Rational tr = (j == 0 && l == 0) ? gm[static_cast<std::size_t>(i + k)] : Rational(0);
            f.M_tr(p, q) = tr;
            f.M_tr(q, p) = tr;
        }
    }
    f.measure_T = mom({0, 0});
    f.measure_Gamma = h;
    return f;
}

AssembledForms assemble_monomial_3d(const Tetrahedron3D& t, const BasisSpec& basis, const AssemblyOptions& opt)
{
    const RationalSimplex<3> simplex = t.rationalized(opt.rational_digits);
    const int top = 2 * basis.N;
    const MomentTable<3> mom(simplex, top);
    const Rational& h1 = simplex.vertices[1][0];
    const Rational& h3 = simplex.vertices[2][2];
    // Integrals of x^a z^c over Gamma = ABC: h1^(a+1) h3^(c+1) a! c! / (a+c+2)!.
    const auto span = static_cast<std::size_t>(top + 1);
    std::vector<Rational> gm(span * span);
    {
        std::vector<Rational> p1(span + 1), p3(span + 1);
        p1[0] = 1;
        p3[0] = 1;
        for (std::size_t e = 1; e <= span; ++e) {
            p1[e] = p1[e - 1] * h1;
            p3[e] = p3[e - 1] * h3;
        }
        for (std::size_t a = 0; a < span; ++a) {
            for (std::size_t c = 0; c < span; ++c) {
                gm[a * span + c] = p1[a + 1] * p3[c + 1] *
                                   monomial_integral_unit_simplex({static_cast<int>(a), static_cast<int>(c)});
            }
        }
    }
    AssembledForms f = allocate(basis, t.h2(), true);
    const auto idx = basis.indices();
    const std::size_t n = idx.size();
    for (std::size_t p = 0; p < n; ++p) {
        const auto& e = idx[p];
        f.m[p] = mom({e[0], e[1], e[2]});
        f.g[p] = e[1] == 0 ? gm[static_cast<std::size_t>(e[0]) * span + static_cast<std::size_t>(e[2])] : Rational(0);
        for (std::size_t q = p; q < n; ++q) {
            const auto& g = idx[q];
            const std::array<int, 3> s{e[0] + g[0], e[1] + g[1], e[2] + g[2]};
            Rational kv(0);
            for (std::size_t d = 0; d < 3; ++d) {
                const int w = e[d] * g[d];
                if (w != 0) {
                    std::array<int, 3> sd = s;
                    sd[d] -= 2;
                    kv += w * mom(sd);
                }
            }
            f.K(p, q) = kv;
            f.K(q, p) = kv;
            f.M_vol(p, q) = mom(s);
            f.M_vol(q, p) = f.M_vol(p, q);
            const Rational tr = (e[1] == 0 && g[1] == 0)
                                    ? gm[static_cast<std::size_t>(s[0]) * span + static_cast<std::size_t>(s[2])]
                                    : Rational(0);
            f.M_tr(p, q) = tr;
            f.M_tr(q, p) = tr;
        }
    }
    f.measure_T = mom({0, 0, 0});
    f.measure_Gamma = h1 * h3 / 2;
    return f;
}

AssembledForms assemble_cosine_2d(const Triangle2D& t, const BasisSpec& basis)
{
    const auto idx = basis.indices();
    const std::size_t n = idx.size();
    const auto verts = t.vertices();
    const QuadratureRule rule = triangle_rule(2 * basis.N + 8);
    const auto [gx, gw] = interval_rule(2 * basis.N + 8);
    const QuadratureOptions qopt;

    struct Raw {
        std::vector<double> K, M, T, m, g;
    };
    auto compute = [&](int level) {
        Raw r;
        r.K.assign(n * n, 0.0);
        r.M.assign(n * n, 0.0);
        r.T.assign(n * n, 0.0);
        r.m.assign(n, 0.0);
        r.g.assign(n, 0.0);
        const WeightedPoints wp = triangle_points(verts, rule, level);
        std::vector<double> val(n), dx(n), dy(n);
        for (std::size_t q = 0; q < wp.weights.size(); ++q) {
            const double x = wp.points[q][0], y = wp.points[q][1], w = wp.weights[q];
            for (std::size_t p = 0; p < n; ++p) {
                const double ax = pi * idx[p][0], ay = pi * idx[p][1];
                const double cx = std::cos(ax * x), cy = std::cos(ay * y);
                val[p] = cx * cy;
                dx[p] = -ax * std::sin(ax * x) * cy;
                dy[p] = -ay * cx * std::sin(ay * y);
            }
            for (std::size_t p = 0; p < n; ++p) {
                r.m[p] += w * val[p];
                for (std::size_t s = p; s < n; ++s) {
                    r.K[p * n + s] += w * (dx[p] * dx[s] + dy[p] * dy[s]);
                    r.M[p * n + s] += w * val[p] * val[s];
                }
            }
        }
        const int pieces = 1 << level;
        const double h = t.h();
        for (int piece = 0; piece < pieces; ++piece) {
            for (std::size_t q = 0; q < gx.size(); ++q) {
                const double x = h * (piece + gx[q]) / pieces;
                const double w = h * gw[q] / pieces;
                for (std::size_t p = 0; p < n; ++p) {
                    val[p] = std::cos(pi * idx[p][0] * x);
                }
                for (std::size_t p = 0; p < n; ++p) {
                    r.g[p] += w * val[p];
                    for (std::size_t s = p; s < n; ++s) {
                        r.T[p * n + s] += w * val[p] * val[s];
                    }
                }
            }
        }
        return r;
    };
    auto max_abs_diff = [](const std::vector<double>& a, const std::vector<double>& b, double& scale) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d = std::max(d, std::abs(a[i] - b[i]));
            scale = std::max(scale, std::abs(a[i]));
        }
        return d;
    };
    Raw prev = compute(0);
    for (int level = 1;; ++level) {
        if (level > qopt.max_level) {
            throw NumericalError("cosine assembly: quadrature did not converge");
        }
        Raw cur = compute(level);
        double scale = 0.0;
        double diff = max_abs_diff(cur.K, prev.K, scale);
        diff = std::max(diff, max_abs_diff(cur.M, prev.M, scale));
        diff = std::max(diff, max_abs_diff(cur.T, prev.T, scale));
        diff = std::max(diff, max_abs_diff(cur.m, prev.m, scale));
        diff = std::max(diff, max_abs_diff(cur.g, prev.g, scale));
        prev = std::move(cur);
        if (diff <= qopt.relative_tolerance * scale) {
            break;
        }
    }
    AssembledForms f = allocate(basis, t.h(), false);
    for (std::size_t p = 0; p < n; ++p) {
        f.m[p] = prev.m[p];
        f.g[p] = prev.g[p];
        for (std::size_t s = p; s < n; ++s) {
            f.K(p, s) = f.K(s, p) = prev.K[p * n + s];
            f.M_vol(p, s) = f.M_vol(s, p) = prev.M[p * n + s];
            f.M_tr(p, s) = f.M_tr(s, p) = prev.T[p * n + s];
        }
    }
    f.measure_T = t.area();
    f.measure_Gamma = t.h();
    return f;
}

// ---------------------------------------------------------------- solver

using Ext = ExtendedReal;

Matrix<Ext> to_extended(const Matrix<Rational>& a, mp_bitcnt_t bits)
{
    Matrix<Ext> out(a.rows(), a.cols(), Ext(0, bits));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = Ext(a(i, j), bits);
        }
    }
    return out;
}

double frobenius(const Matrix<Ext>& a)
{
    Ext s(0, a(0, 0).get_prec());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(s.get_d());
}

std::vector<Ext> multiply(const Matrix<Ext>& a, const std::vector<Ext>& v)
{
    const Ext zero(0, v[0].get_prec());
    std::vector<Ext> out(a.rows(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Ext s = zero;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Ext dot(const std::vector<Ext>& a, const std::vector<Ext>& b)
{
    Ext s(0, a[0].get_prec());
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void sign_normalize(std::vector<double>& c)
{
    double big = 0.0;
    for (double x : c) {
        big = std::max(big, std::abs(x));
    }
    if (big == 0.0) {
        return;
    }
    double sign = 1.0;
    for (double x : c) {
        if (std::abs(x) > 1e-9 * big) {
            sign = x > 0 ? 1.0 : -1.0;
            break;
        }
    }
    for (double& x : c) {
        x *= sign / big;
    }
}

struct Attempt {
    PencilSolution solution;
    bool condition_ok = true;
};

Attempt attempt_solve(const Matrix<Rational>& deflated, const Matrix<Rational>& stiffness, std::size_t count,
                      const SolverOptions& options, int digits)
{
    const mp_bitcnt_t bits = bits_for_digits(digits);
    const Matrix<Ext> mt = to_extended(deflated, bits);
    const Matrix<Ext> k = to_extended(stiffness, bits);
    Matrix<Ext> l;
    try {
        l = cholesky(k);
    } catch (const FactorizationError& e) {
        throw NumericalError(std::string("stiffness matrix is not positive definite: ") + e.what());
    }
    const std::size_t n = l.rows();
    double dmin = l(0, 0).get_d(), dmax = dmin;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = l(i, i).get_d();
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    Attempt attempt;
    attempt.solution.digits_used = digits;
    attempt.solution.condition_estimate = (dmax / dmin) * (dmax / dmin);
    if (attempt.solution.condition_estimate > std::pow(10.0, digits - 20)) {
        attempt.condition_ok = false;
        return attempt;
    }
    const Matrix<Ext> c = congruence_reduce(l, mt);

    // Eigenvectors y of C, either from a double Jacobi or an extended one.
    std::vector<std::vector<Ext>> ys;
    auto extended_vectors = [&]() {
        JacobiOptions jo;
        jo.relative_tolerance = 1e-30;
        jo.max_sweeps = 200;
        const auto eig = jacobi_eigensolve(c, jo);
        ys.clear();
        for (std::size_t r = 0; r < count; ++r) {
            const std::size_t col = n - 1 - r;
            std::vector<Ext> y(n, Ext(0, bits));
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = eig.vectors(i, col);
            }
            ys.push_back(std::move(y));
        }
    };
    if (options.extended_jacobi) {
        extended_vectors();
        attempt.solution.extended_jacobi_used = true;
    } else {
        const Matrix<double> cd = c.map<double>([](const Ext& x) { return x.get_d(); });
        const auto eig = jacobi_eigensolve(cd);
        for (std::size_t r = 0; r < count; ++r) {
            const std::size_t col = n - 1 - r;
            std::vector<Ext> y(n, Ext(0, bits));
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = eig.vectors(i, col);
            }
            ys.push_back(std::move(y));
        }
    }

    const double norm_m = frobenius(mt);
    const double norm_k = frobenius(k);
    auto refine = [&](const std::vector<Ext>& y) {
        std::vector<Ext> v = y;
        backward_substitute_transposed(l, v);
        const std::vector<Ext> mv = multiply(mt, v);
        const std::vector<Ext> kv = multiply(k, v);
        const Ext lambda = dot(v, mv) / dot(v, kv);
        Ext rr(0, bits);
        for (std::size_t i = 0; i < n; ++i) {
            const Ext d = mv[i] - lambda * kv[i];
            rr += d * d;
        }
        const double vnorm = std::sqrt(dot(v, v).get_d());
        PencilPair pair;
        pair.lambda = lambda.get_d();
        pair.residual = std::sqrt(rr.get_d()) / ((norm_m + std::abs(pair.lambda) * norm_k) * vnorm);
        pair.coefficients.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pair.coefficients[i] = v[i].get_d();
        }
        sign_normalize(pair.coefficients);
        return pair;
    };
    auto refine_all = [&]() {
        attempt.solution.pairs.clear();
        for (const auto& y : ys) {
            attempt.solution.pairs.push_back(refine(y));
        }
    };
    refine_all();
    const bool residual_ok = std::all_of(attempt.solution.pairs.begin(), attempt.solution.pairs.end(),
                                         [&](const PencilPair& p) { return p.residual < options.residual_tolerance; });
    if (!residual_ok && !attempt.solution.extended_jacobi_used) {
        extended_vectors();
        attempt.solution.extended_jacobi_used = true;
        refine_all();
    }
    for (const auto& p : attempt.solution.pairs) {
        if (!(p.residual < options.residual_tolerance)) {
            throw NumericalError("eigenpair residual " + std::to_string(p.residual) + " exceeds tolerance");
        }
    }
    // Descending eigenvalues; near-ties ordered by coefficient vectors.
    auto& pairs = attempt.solution.pairs;
    std::stable_sort(pairs.begin(), pairs.end(), [](const PencilPair& a, const PencilPair& b) {
        const double tol = 1e-10 * std::max(std::abs(a.lambda), std::abs(b.lambda));
        if (std::abs(a.lambda - b.lambda) > tol) {
            return a.lambda > b.lambda;
        }
        return a.coefficients < b.coefficients;
    });
    return attempt;
}

} // namespace

// ---------------------------------------------------------------- basis

std::string to_string(BasisFamily family)
{
    return family == BasisFamily::Monomial ? "monomial" : "cosine";
}

BasisFamily parse_basis_family(const std::string& text)
{
    std::string s;
    for (char c : text) {
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (s == "monomial") {
        return BasisFamily::Monomial;
    }
    if (s == "cosine") {
        return BasisFamily::Cosine;
    }
    throw std::invalid_argument("unknown basis family '" + text + "' (expected monomial or cosine)");
}

std::size_t BasisSpec::size() const
{
    std::size_t s = 1;
    for (int d = 0; d < dimension; ++d) {
        s *= static_cast<std::size_t>(N + 1);
    }
    return s - 1;
}

std::vector<std::array<int, 3>> BasisSpec::indices() const
{
    if (N < 1) {
        throw std::invalid_argument("basis degree N must be at least 1");
    }
    if (dimension != 2 && dimension != 3) {
        throw std::invalid_argument("basis dimension must be 2 or 3");
    }
    std::vector<std::array<int, 3>> out;
    const int kmax = dimension == 3 ? N : 0;
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            for (int k = 0; k <= kmax; ++k) {
                if (i == 0 && j == 0 && k == 0) {
                    continue;
                }
                out.push_back({i, j, k});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const int ma = std::max({a[0], a[1], a[2]});
        const int mb = std::max({b[0], b[1], b[2]});
        if (ma != mb) {
            return ma < mb;
        }
        return a < b;
    });
    return out;
}

std::vector<std::size_t> BasisSpec::positions_of(const BasisSpec& smaller) const
{
    if (smaller.family != family || smaller.dimension != dimension || smaller.N > N) {
        throw std::invalid_argument("positions_of: not a sub-basis");
    }
    const auto big = indices();
    std::vector<std::size_t> pos;
    for (const auto& e : smaller.indices()) {
        pos.push_back(static_cast<std::size_t>(std::find(big.begin(), big.end(), e) - big.begin()));
    }
    return pos;
}

// ---------------------------------------------------------------- forms

AssembledForms assemble(const Shape& shape, const BasisSpec& basis, const AssemblyOptions& options)
{
    if (const auto* t = std::get_if<Triangle2D>(&shape)) {
        if (basis.dimension != 2) {
            throw std::invalid_argument("assemble: basis dimension does not match the triangle");
        }
        return basis.family == BasisFamily::Monomial ? assemble_monomial_2d(*t, basis, options)
                                                     : assemble_cosine_2d(*t, basis);
    }
    const auto& tet = std::get<Tetrahedron3D>(shape);
    if (basis.dimension != 3 || basis.family != BasisFamily::Monomial) {
        throw std::invalid_argument("assemble: tetrahedra support the 3D monomial basis only");
    }
    return assemble_monomial_3d(tet, basis, options);
}

AssembledForms restrict_forms(const AssembledForms& forms, const BasisSpec& smaller)
{
    const auto pos = forms.basis.positions_of(smaller);
    AssembledForms out;
    out.basis = smaller;
    out.exact = forms.exact;
    out.length_scale = forms.length_scale;
    out.K = forms.K.principal_submatrix(pos);
    out.M_vol = forms.M_vol.principal_submatrix(pos);
    out.M_tr = forms.M_tr.principal_submatrix(pos);
    for (std::size_t p : pos) {
        out.m.push_back(forms.m[p]);
        out.g.push_back(forms.g[p]);
    }
    out.measure_T = forms.measure_T;
    out.measure_Gamma = forms.measure_Gamma;
    return out;
}

Matrix<Rational> deflated_mass(const AssembledForms& f, ConstantKind kind)
{
    const std::size_t n = f.basis.size();
    Matrix<Rational> out(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p; q < n; ++q) {
            Rational v;
            switch (kind) {
            case ConstantKind::CP_T:
                v = f.M_vol(p, q) - f.m[p] * f.m[q] / f.measure_T;
                break;
            case ConstantKind::CP_Gamma:
                v = f.M_vol(p, q) - (f.g[p] * f.m[q] + f.m[p] * f.g[q]) / f.measure_Gamma +
                    f.measure_T * f.g[p] * f.g[q] / (f.measure_Gamma * f.measure_Gamma);
                break;
            case ConstantKind::CTr_Gamma:
                v = f.M_tr(p, q) - f.g[p] * f.g[q] / f.measure_Gamma;
                break;
            }
            out(p, q) = v;
            out(q, p) = v;
        }
    }
    return out;
}

PencilSolution solve_pencil(const Matrix<Rational>& deflated, const Matrix<Rational>& stiffness, std::size_t count,
                            const SolverOptions& options)
{
    if (deflated.rows() != stiffness.rows() || deflated.rows() == 0) {
        throw std::invalid_argument("solve_pencil: matrices must be non-empty and of equal size");
    }
    count = std::min(count, deflated.rows());
    Attempt a = attempt_solve(deflated, stiffness, count, options, options.digits);
    if (!a.condition_ok) {
        a = attempt_solve(deflated, stiffness, count, options, 2 * options.digits);
        if (!a.condition_ok) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", a.solution.condition_estimate);
            throw NumericalError(std::string("stiffness condition estimate ") + buf + " too large even at " +
                                 std::to_string(2 * options.digits) + " digits");
        }
    }
    return a.solution;
}

double constant_from_lambda(double lambda, ConstantKind kind, double length_scale)
{
    const double c = std::sqrt(std::max(lambda, 0.0));
    return kind == ConstantKind::CTr_Gamma ? c / std::sqrt(length_scale) : c / length_scale;
}

EigenResult lower_bound(const AssembledForms& forms, ConstantKind kind, const SolverOptions& options)
{
    if (forms.basis.dimension == 3 && kind == ConstantKind::CP_T) {
        throw std::invalid_argument("lower_bound: tetrahedra support CP_Gamma and CTr_Gamma only");
    }
    const PencilSolution sol = solve_pencil(deflated_mass(forms, kind), forms.K, 1, options);
    const PencilPair& top = sol.pairs.front();
    EigenResult r;
    r.lambda_extremal = top.lambda;
    r.eigenvalue = 1.0 / top.lambda;
    r.coefficients = top.coefficients;
    r.constant_lower_bound = constant_from_lambda(top.lambda, kind, forms.length_scale);
    r.residual = top.residual;
    r.basis = forms.basis;
    r.kind = kind;
    r.certified = forms.exact;
    r.digits_used = sol.digits_used;
    if (!(r.constant_lower_bound > 0.0)) {
        throw NumericalError("lower_bound: non-positive extremal eigenvalue");
    }
    return r;
}

EigenResult lower_bound(const Shape& shape, const BasisSpec& basis, ConstantKind kind, const SolverOptions& options,
                        const AssemblyOptions& assembly)
{
    return lower_bound(assemble(shape, basis, assembly), kind, options);
}

std::vector<EigenPairResult> eigenpairs(const AssembledForms& forms, ConstantKind kind, std::size_t k,
                                        const SolverOptions& options)
{
    if (k == 0 || k > forms.basis.size()) {
        throw std::invalid_argument("eigenpairs: k must lie in [1, M]");
    }
    const PencilSolution sol = solve_pencil(deflated_mass(forms, kind), forms.K, k, options);
    std::vector<EigenPairResult> out;
    for (const auto& p : sol.pairs) {
        EigenPairResult e;
        e.eigenvalue = 1.0 / p.lambda;
        e.constant = constant_from_lambda(p.lambda, kind, forms.length_scale);
        e.coefficients = p.coefficients;
        e.residual = p.residual;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SweepPoint> lower_bound_sweep(double h, double rho, const std::vector<double>& alpha_grid,
                                          const BasisSpec& basis, const std::vector<ConstantKind>& kinds,
                                          const SweepOptions& options)
{
    std::vector<SweepPoint> out(alpha_grid.size());
    auto work = [&](std::size_t i) {
        SweepPoint& pt = out[i];
        pt.alpha = alpha_grid[i];
        pt.results.assign(kinds.size(), std::nullopt);
        try {
            const AssembledForms forms = assemble(Triangle2D(h, rho, pt.alpha), basis, options.assembly);
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                pt.results[k] = lower_bound(forms, kinds[k], options.solver);
            }
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.parallelism, static_cast<unsigned>(out.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            work(i);
        }
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < out.size(); i += workers) {
                work(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    return out;
}

double evaluate_expansion(const BasisSpec& basis, const std::vector<double>& coefficients, double x, double y, double z)
{
    const auto idx = basis.indices();
    if (coefficients.size() != idx.size()) {
        throw std::invalid_argument("evaluate_expansion: coefficient count does not match the basis");
    }
    long double sum = 0.0L;
    for (std::size_t p = 0; p < idx.size(); ++p) {
        long double phi = 0.0L;
        if (basis.family == BasisFamily::Monomial) {
            phi = std::pow(static_cast<long double>(x), idx[p][0]) * std::pow(static_cast<long double>(y), idx[p][1]) *
                  std::pow(static_cast<long double>(z), idx[p][2]);
        } else {
            phi = std::cos(pi * idx[p][0] * x) * std::cos(pi * idx[p][1] * y);
        }
        sum += coefficients[p] * phi;
    }
    return static_cast<double>(sum);
}

} // namespace pbounds
