#pragma once

#include "hcont/error.hpp"
#include "hcont/linalg.hpp"
#include "hcont/scalar.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hcont {

using Rational = boost::multiprecision::mpq_rational;

/// Signed exponents, one per variable of the ambient system.
using ExponentVector = std::vector<int>;

int totalDegree(const ExponentVector& e);

/// Gaussian rational, the exact value of a parsed coefficient.
struct ExactComplex {
    Rational re;
    Rational im;

    bool isZero() const { return re == 0 && im == 0; }
    Complex toComplex() const;

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    /// Throws std::domain_error on division by zero.
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);
    ExactComplex operator-() const { return {-re, -im}; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// Complex coefficient at double precision, optionally carrying the exact
/// Gaussian rational it was rounded from.
class Coefficient {
public:
    Coefficient() = default;
    Coefficient(Complex value) : value_(value) {} // NOLINT(google-explicit-constructor)
    Coefficient(ExactComplex exact) : value_(exact.toComplex()), exact_(std::move(exact)) {} // NOLINT

    const Complex& value() const noexcept { return value_; }
    const std::optional<ExactComplex>& exact() const noexcept { return exact_; }

    /// The coefficient at the working precision of C. Exact coefficients are
    /// rounded afresh from their rational form.
    template <class C>
    C as() const;

    bool isZero() const;

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    Coefficient operator-() const;

private:
    Complex value_{0.0, 0.0};
    std::optional<ExactComplex> exact_;
};

template <>
inline Complex Coefficient::as<Complex>() const { return value_; }

template <>
BigComplex Coefficient::as<BigComplex>() const;

struct Term {
    Coefficient coefficient;
    ExponentVector exponents;
};

namespace detail {

/// x^e by repeated squaring; throws EvaluationError for 0 raised to e < 0.
template <class C>
C power(const C& x, int e) {
    if (e == 0) return C(1.0);
    if (e < 0) {
        if (magnitude(x) == 0.0) throw EvaluationError("zero coordinate raised to a negative exponent");
        return C(1.0) / power(x, -e);
    }
    C result(1.0);
    C base = x;
    unsigned k = static_cast<unsigned>(e);
    while (true) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k == 0) break;
        base = base * base;
    }
    return result;
}

} // namespace detail

/// Sparse multivariate Laurent polynomial with complex coefficients.
///
/// Terms are kept in descending graded-lexicographic order with distinct
/// exponent vectors and no zero coefficients.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(std::vector<std::string> variables, std::vector<Term> terms);

    std::size_t variableCount() const noexcept { return variables_.size(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t termCount() const noexcept { return terms_.size(); }
    bool isZero() const noexcept { return terms_.empty(); }
    bool isConstant() const;
    bool hasNegativeExponents() const;

    /// Maximum total degree over the terms.
    int degree() const;

    template <class C>
    C evaluate(std::span<const C> x) const;

    /// Value and gradient in one pass.
    template <class C>
    C evaluate(std::span<const C> x, std::span<C> gradient) const;

    LaurentPolynomial scaled(const Coefficient& c) const;
    LaurentPolynomial multipliedByMonomial(const ExponentVector& shift) const;
    LaurentPolynomial operator+(const LaurentPolynomial& other) const;

    std::string toString() const;

private:
    std::vector<std::string> variables_;
    std::vector<Term> terms_;
};

/// A nonempty sequence of Laurent polynomials over one variable list.
class PolySystem {
public:
    PolySystem() = default;
    PolySystem(std::vector<std::string> variables, std::vector<LaurentPolynomial> polynomials);

    std::size_t size() const noexcept { return polynomials_.size(); }
    std::size_t variableCount() const noexcept { return variables_.size(); }
    bool isSquare() const noexcept { return size() == variableCount(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<LaurentPolynomial>& polynomials() const noexcept { return polynomials_; }
    const LaurentPolynomial& operator[](std::size_t i) const { return polynomials_[i]; }

    template <class C>
    std::vector<C> evaluate(std::span<const C> x) const;

    template <class C>
    Matrix<C> jacobian(std::span<const C> x) const;

    /// Values and Jacobian in one pass.
    template <class C>
    std::vector<C> evaluate(std::span<const C> x, Matrix<C>& jacobian) const;

    /// Text form accepted by parseSystem, including a variable declaration
    /// so that re-parsing preserves the variable order.
    std::string toString() const;

private:
    std::vector<std::string> variables_;
    std::vector<LaurentPolynomial> polynomials_;
};

/// Converts num_i / den_i = 0 into num_i * den_i^-1 = 0. Each denominator
/// must be a single monomial.
PolySystem rationalToLaurent(std::span<const std::pair<LaurentPolynomial, LaurentPolynomial>> equations);

/// Multiplies each polynomial by the monomial that makes all of its exponents
/// nonnegative with at least one zero per variable. Toric roots are unchanged.
PolySystem clearNegativeExponents(const PolySystem& s);

/// Product of the total degrees (Bezout number) after clearing negative
/// exponents. Throws Error on overflow of 64 bits.
std::uint64_t totalDegreeProduct(const PolySystem& s);

/// sum_j weights[j] * polys[j]
LaurentPolynomial linearCombination(std::span<const LaurentPolynomial> polys, std::span<const Complex> weights);

/// coefficients[0..n-1] . x + coefficients[n]
LaurentPolynomial affineLinear(const std::vector<std::string>& variables, std::span<const Complex> coefficients);

// ---------------------------------------------------------------------------

template <class C>
C LaurentPolynomial::evaluate(std::span<const C> x) const {
    if (x.size() != variableCount()) throw Error("evaluate: point has wrong dimension");
    C sum(0.0);
    for (const Term& term : terms_) {
        C value = term.coefficient.as<C>();
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (term.exponents[k] != 0) value = value * detail::power(x[k], term.exponents[k]);
        }
        sum += value;
    }
    return sum;
}

template <class C>
C LaurentPolynomial::evaluate(std::span<const C> x, std::span<C> gradient) const {
    const std::size_t n = variableCount();
    if (x.size() != n || gradient.size() != n) throw Error("evaluate: point has wrong dimension");
    for (auto& g : gradient) g = C(0.0);
    C sum(0.0);
    std::vector<std::size_t> support;
    std::vector<C> powers;
    for (const Term& term : terms_) {
        support.clear();
        powers.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (term.exponents[k] != 0) {
                support.push_back(k);
                powers.push_back(detail::power(x[k], term.exponents[k]));
            }
        }
        const C coeff = term.coefficient.as<C>();
        C value = coeff;
        for (const C& p : powers) value = value * p;
        sum += value;
        for (std::size_t a = 0; a < support.size(); ++a) {
            const std::size_t k = support[a];
            const int e = term.exponents[k];
            C d = coeff * C(static_cast<double>(e)) * detail::power(x[k], e - 1);
            for (std::size_t b = 0; b < support.size(); ++b) {
                if (b != a) d = d * powers[b];
            }
            gradient[k] += d;
        }
    }
    return sum;
}

template <class C>
std::vector<C> PolySystem::evaluate(std::span<const C> x) const {
    std::vector<C> values;
    values.reserve(size());
    for (const auto& p : polynomials_) values.push_back(p.evaluate(x));
    return values;
}

template <class C>
std::vector<C> PolySystem::evaluate(std::span<const C> x, Matrix<C>& jacobian) const {
    jacobian = Matrix<C>(size(), variableCount());
    std::vector<C> values;
    values.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) values.push_back(polynomials_[i].evaluate(x, jacobian.row(i)));
    return values;
}

template <class C>
Matrix<C> PolySystem::jacobian(std::span<const C> x) const {
    Matrix<C> jac;
    evaluate(x, jac);
    return jac;
}

} // namespace hcont
