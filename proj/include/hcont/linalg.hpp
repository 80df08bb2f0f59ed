#pragma once

#include "hcont/error.hpp"
#include "hcont/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hcont {

/// Dense row-major matrix over a complex scalar type.
template <class C>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, C(0.0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = C(1.0);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    C& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<C> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const C> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    void setZero() { std::fill(data_.begin(), data_.end(), C(0.0)); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<C> data_;
};

using ComplexMatrix = Matrix<Complex>;

template <class C>
std::vector<C> multiply(const Matrix<C>& a, std::span<const C> x) {
    assert(a.cols() == x.size());
    std::vector<C> y(a.rows(), C(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        C acc(0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <class C>
double normInf(std::span<const C> x) {
    double m = 0.0;
    for (const C& v : x) m = std::max(m, magnitude(v));
    return m;
}

template <class C>
double normInf(const std::vector<C>& x) {
    return normInf(std::span<const C>(x));
}

/// Maximum absolute row sum.
template <class C>
double normInf(const Matrix<C>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += magnitude(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

/// LU factorization with partial pivoting, PA = LU, stored compactly.
template <class C>
class LuFactorization {
public:
    /// Factors a square matrix. Throws SingularMatrixError when a pivot falls
    /// below n * eps * ||A||_inf.
    explicit LuFactorization(Matrix<C> a) : lu_(std::move(a)), perm_(lu_.rows()) {
        const std::size_t n = lu_.rows();
        if (lu_.cols() != n) throw Error("LU factorization needs a square matrix");
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        normA_ = normInf(lu_);
        const double threshold = static_cast<double>(n) * unitRoundoff<C>() * normA_;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = magnitude(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double m = magnitude(lu_(i, k));
                if (m > best) { best = m; p = i; }
            }
            if (best <= threshold || best == 0.0) throw SingularMatrixError(k);
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
                sign_ = -sign_;
            }
            const C pivot = lu_(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                C factor = lu_(i, k) / pivot;
                lu_(i, k) = factor;
                if (magnitude(factor) == 0.0) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
            }
        }
    }

    std::size_t size() const noexcept { return lu_.rows(); }
    int sign() const noexcept { return sign_; }
    const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
    double normA() const noexcept { return normA_; }

    /// Solves A x = b.
    std::vector<C> solve(std::span<const C> b) const {
        const std::size_t n = size();
        std::vector<C> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] = x[i] / lu_(i, i);
        }
        return x;
    }

    /// Solves A^H x = b.
    std::vector<C> solveAdjoint(std::span<const C> b) const {
        const std::size_t n = size();
        std::vector<C> w(b.begin(), b.end());
        // U^H w = b
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) w[i] -= conjugate(lu_(j, i)) * w[j];
            w[i] = w[i] / conjugate(lu_(i, i));
        }
        // L^H v = w
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) w[i] -= conjugate(lu_(j, i)) * w[j];
        std::vector<C> x(n);
        for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
        return x;
    }

    /// Estimate of 1 / kappa_inf(A), in (0, 1].
    ///
    /// ||A^-1||_inf equals ||A^-H||_1, which is estimated with Hager's
    /// method (Higham's complex variant) using at most five pairs of
    /// triangular solves on the existing factors.
    double inverseConditionEstimate() const {
        const std::size_t n = size();
        if (n == 0 || normA_ == 0.0) return 0.0;
        std::vector<C> x(n, C(1.0 / static_cast<double>(n)));
        double estimate = 0.0;
        std::size_t lastIndex = n;
        for (int iter = 0; iter < 5; ++iter) {
            std::vector<C> y = solveAdjoint(x); // B x with B = A^-H
            double ynorm1 = 0.0;
            std::vector<C> xi(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double m = magnitude(y[i]);
                ynorm1 += m;
                xi[i] = m == 0.0 ? C(1.0) : y[i] / fromComplex<C>(Complex(m, 0.0));
            }
            if (iter > 0 && ynorm1 <= estimate) break;
            estimate = ynorm1;
            std::vector<C> z = solve(xi); // B^H xi = A^-1 xi
            std::size_t j = 0;
            double zmax = -1.0;
            double zx = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double m = magnitude(z[i]);
                if (m > zmax) { zmax = m; j = i; }
                zx += toComplex(conjugate(z[i]) * x[i]).real();
            }
            if (zmax <= zx || j == lastIndex) break;
            lastIndex = j;
            std::fill(x.begin(), x.end(), C(0.0));
            x[j] = C(1.0);
        }
        // Higham's alternative lower bound guards against the rare cases
        // where the power iteration stalls on a poor vertex.
        std::vector<C> alt(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / std::max<double>(1.0, n - 1.0));
            alt[i] = C(s);
        }
        std::vector<C> w = solveAdjoint(alt);
        double wnorm1 = 0.0;
        for (const C& v : w) wnorm1 += magnitude(v);
        estimate = std::max(estimate, 2.0 * wnorm1 / (3.0 * static_cast<double>(n)));
        const double rco = 1.0 / (normA_ * estimate);
        return std::clamp(rco, std::numeric_limits<double>::min(), 1.0);
    }

private:
    Matrix<C> lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    double normA_ = 0.0;
};

template <class C>
struct LuSolveResult {
    std::vector<C> x;
    LuFactorization<C> factorization;
};

/// Solves A x = b by partial-pivoting LU, returning the factorization too.
template <class C>
LuSolveResult<C> luSolve(const Matrix<C>& a, std::span<const C> b) {
    if (a.rows() != b.size()) throw Error("luSolve: dimension mismatch");
    LuFactorization<C> lu(a);
    std::vector<C> x = lu.solve(b);
    return {std::move(x), std::move(lu)};
}

template <class C>
double inverseConditionEstimate(const LuFactorization<C>& f) {
    return f.inverseConditionEstimate();
}

} // namespace hcont
