#pragma once

#include "pbounds/numeric_types.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>
#include <algorithm>
#include <stdexcept>

namespace pbounds {

/// Sparse polynomial in D variables with exact rational coefficients.
template <int D>
class Polynomial {
public:
    using Exponent = std::array<int, D>;
    using TermMap = std::map<Exponent, Rational>;

    Polynomial() = default;

    explicit Polynomial(const Rational& constant)
    {
        if (constant != 0) {
            terms_[Exponent{}] = constant;
        }
    }

    static Polynomial monomial(const Exponent& e, const Rational& coeff = Rational(1))
    {
        for (int k : e) {
            if (k < 0) {
                throw std::invalid_argument("Polynomial::monomial: negative exponent");
            }
        }
        Polynomial p;
        if (coeff != 0) {
            p.terms_[e] = coeff;
        }
        return p;
    }

    /// The coordinate function x_k.
    static Polynomial variable(int k)
    {
        Exponent e{};
        e[static_cast<std::size_t>(k)] = 1;
        return monomial(e);
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const Rational& coeff)
    {
        if (coeff == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] int total_degree() const
    {
        int deg = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) {
                s += k;
            }
            deg = std::max(deg, s);
        }
        return deg;
    }

    Polynomial& operator+=(const Polynomial& other)
    {
        for (const auto& [e, c] : other.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other)
    {
        for (const auto& [e, c] : other.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    Polynomial& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (int k = 0; k < D; ++k) {
                    e[static_cast<std::size_t>(k)] = ea[static_cast<std::size_t>(k)] + eb[static_cast<std::size_t>(k)];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    [[nodiscard]] Polynomial derivative(int k) const
    {
        Polynomial out;
        const auto kk = static_cast<std::size_t>(k);
        for (const auto& [e, c] : terms_) {
            if (e[kk] == 0) {
                continue;
            }
            Exponent d = e;
            d[kk] -= 1;
            out.add_term(d, c * e[kk]);
        }
        return out;
    }

    [[nodiscard]] Polynomial pow(int n) const
    {
        Polynomial out(Rational(1));
        for (int i = 0; i < n; ++i) {
            out = out * *this;
        }
        return out;
    }

    [[nodiscard]] double evaluate(const std::array<double, D>& x) const
    {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = c.get_d();
            for (int k = 0; k < D; ++k) {
                t *= std::pow(x[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
            }
            sum += t;
        }
        return sum;
    }

    [[nodiscard]] Rational evaluate(const std::array<Rational, D>& x) const
    {
        Rational sum(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int k = 0; k < D; ++k) {
                for (int p = 0; p < e[static_cast<std::size_t>(k)]; ++p) {
                    t *= x[static_cast<std::size_t>(k)];
                }
            }
            sum += t;
        }
        return sum;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

using Polynomial1 = Polynomial<1>;
using Polynomial2 = Polynomial<2>;
using Polynomial3 = Polynomial<3>;

/// Substitutes affine expressions for each variable: result(y) = p(sub_0(y), ..., sub_{D-1}(y)).
template <int D, int E>
Polynomial<E> compose(const Polynomial<D>& p, const std::array<Polynomial<E>, D>& sub)
{
    int max_deg = 0;
    for (const auto& [e, c] : p.terms()) {
        for (int k : e) {
            max_deg = std::max(max_deg, k);
        }
    }
    std::array<std::vector<Polynomial<E>>, D> powers;
    for (int k = 0; k < D; ++k) {
        auto& pk = powers[static_cast<std::size_t>(k)];
        pk.reserve(static_cast<std::size_t>(max_deg) + 1);
        pk.emplace_back(Rational(1));
        for (int n = 1; n <= max_deg; ++n) {
            pk.push_back(pk.back() * sub[static_cast<std::size_t>(k)]);
        }
    }
    Polynomial<E> out;
    for (const auto& [e, c] : p.terms()) {
        Polynomial<E> term(c);
        for (int k = 0; k < D; ++k) {
            term = term * powers[static_cast<std::size_t>(k)][static_cast<std::size_t>(e[static_cast<std::size_t>(k)])];
        }
        out += term;
    }
    return out;
}

} // namespace pbounds
