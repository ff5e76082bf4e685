#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pbounds {

/// Row-major dense matrix over an arbitrary scalar type.
template <typename T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] bool is_symmetric() const
    {
        if (rows_ != cols_) {
            return false;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i + 1; j < cols_; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    /// Principal sub-matrix selected by `index` (rows and columns alike).
    [[nodiscard]] Matrix principal_submatrix(const std::vector<std::size_t>& index) const
    {
        Matrix out(index.size(), index.size());
        for (std::size_t a = 0; a < index.size(); ++a) {
            for (std::size_t b = 0; b < index.size(); ++b) {
                out(a, b) = (*this)(index[a], index[b]);
            }
        }
        return out;
    }

    template <typename U, typename Convert>
    [[nodiscard]] Matrix<U> map(Convert&& convert) const
    {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(i, j) = convert((*this)(i, j));
            }
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Thrown when a factorization meets a non-positive pivot.
class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// In-place lower Cholesky factor of a symmetric positive definite matrix.
/// The strict upper triangle of the result is zeroed.
template <typename T>
Matrix<T> cholesky(const Matrix<T>& a)
{
    using std::sqrt;
    const std::size_t n = a.rows();
    Matrix<T> l = a;
    for (std::size_t j = 0; j < n; ++j) {
        T diag = l(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= l(j, k) * l(j, k);
        }
        if (!(diag > 0)) {
            throw FactorizationError("Cholesky pivot " + std::to_string(j) + " is not positive");
        }
        T root = sqrt(diag);
        l(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            T s = l(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / root;
        }
        for (std::size_t i = 0; i < j; ++i) {
            l(i, j) = T(0);
        }
    }
    return l;
}

/// Solves L x = b in place for lower-triangular L.
template <typename T>
void forward_substitute(const Matrix<T>& l, std::vector<T>& b)
{
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        T s = b[i];
        for (std::size_t k = 0; k < i; ++k) {
            s -= l(i, k) * b[k];
        }
        b[i] = s / l(i, i);
    }
}

/// Solves L^T x = b in place for lower-triangular L.
template <typename T>
void backward_substitute_transposed(const Matrix<T>& l, std::vector<T>& b)
{
    const std::size_t n = l.rows();
    for (std::size_t ii = n; ii-- > 0;) {
        T s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            s -= l(k, ii) * b[k];
        }
        b[ii] = s / l(ii, ii);
    }
}

/// Returns L^{-1} A L^{-T} for symmetric A and lower-triangular L.
template <typename T>
Matrix<T> congruence_reduce(const Matrix<T>& l, const Matrix<T>& a)
{
    const std::size_t n = l.rows();
    // Multiplying by an entry carries its precision for software floats.
    const T zero = T(0) * a(0, 0);
    // W = L^{-1} A, stored transposed so that each column is contiguous.
    Matrix<T> wt(n, n, zero);
    std::vector<T> col(n, zero);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = a(i, j);
        }
        forward_substitute(l, col);
        for (std::size_t i = 0; i < n; ++i) {
            wt(j, i) = col[i];
        }
    }
    // C = L^{-1} W^T since A is symmetric.
    Matrix<T> c(n, n, zero);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = wt(i, j);
        }
        forward_substitute(l, col);
        for (std::size_t i = 0; i < n; ++i) {
            c(i, j) = col[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            T avg = (c(i, j) + c(j, i)) / 2;
            c(i, j) = avg;
            c(j, i) = avg;
        }
    }
    return c;
}

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm drops below this fraction of ||A||_F.
    double relative_tolerance = 1e-15;
    int max_sweeps = 100;
};

template <typename T>
struct SymmetricEigenDecomposition {
    std::vector<T> values;   ///< ascending
    Matrix<T> vectors;       ///< column k belongs to values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
template <typename T>
SymmetricEigenDecomposition<T> jacobi_eigensolve(Matrix<T> a, const JacobiOptions& options = {})
{
    using std::abs;
    using std::sqrt;
    const std::size_t n = a.rows();
    if (n != a.cols()) {
        throw std::invalid_argument("jacobi_eigensolve: matrix is not square");
    }
    Matrix<T> v(n, n, T(0) * a(0, 0));
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = T(1) + T(0) * a(0, 0);
    }

    T total = T(0) * a(0, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            total += a(i, j) * a(i, j);
        }
    }
    const T threshold_sq = total * T(options.relative_tolerance) * T(options.relative_tolerance);

    int sweep = 0;
    for (; sweep < options.max_sweeps; ++sweep) {
        T off = T(0) * total;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (!(2 * off > threshold_sq)) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                if (apq == 0) {
                    continue;
                }
                const T theta = (a(q, q) - a(p, p)) / (2 * apq);
                T t = T(1) / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) {
                    t = -t;
                }
                const T c = T(1) / sqrt(t * t + 1);
                const T s = t * c;
                const T tau = s / (c + 1);
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = T(0) * apq;
                a(q, p) = T(0) * apq;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) {
                        continue;
                    }
                    const T g = a(r, p);
                    const T h = a(r, q);
                    const T new_rp = g - s * (h + g * tau);
                    const T new_rq = h + s * (g - h * tau);
                    a(r, p) = new_rp;
                    a(p, r) = new_rp;
                    a(r, q) = new_rq;
                    a(q, r) = new_rq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const T g = v(r, p);
                    const T h = v(r, q);
                    v(r, p) = g - s * (h + g * tau);
                    v(r, q) = h + s * (g - h * tau);
                }
            }
        }
    }
    if (sweep == options.max_sweeps) {
        throw std::runtime_error("jacobi_eigensolve: no convergence");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigenDecomposition<T> out;
    out.sweeps = sweep;
    out.values.reserve(n);
    out.vectors = Matrix<T>(n, n, T(0) * total);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]));
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

} // namespace pbounds
