#include "hcont/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hcont {

namespace {

constexpr double kNegligible = 1e-300;

/// Descending graded-lexicographic order.
bool grlexGreater(const ExponentVector& a, const ExponentVector& b) {
    const int da = totalDegree(a);
    const int db = totalDegree(b);
    if (da != db) return da > db;
    return a > b;
}

std::string formatDouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string formatRational(const Rational& q) {
    return q.str();
}

bool isExactReal(const Coefficient& c) { return c.exact() && c.exact()->im == 0; }

/// Renders a coefficient as a parenthesized or bare literal, without sign
/// handling. Returns {text, negative} where negative means the caller should
/// print a minus sign and text is the magnitude.
std::pair<std::string, bool> formatCoefficient(const Coefficient& c) {
    if (isExactReal(c)) {
        const Rational& r = c.exact()->re;
        return {formatRational(r < 0 ? Rational(-r) : r), r < 0};
    }
    if (c.exact()) {
        const auto& e = *c.exact();
        std::string s = "(" + formatRational(e.re);
        s += e.im < 0 ? " - " : " + ";
        s += formatRational(e.im < 0 ? Rational(-e.im) : e.im) + "*i)";
        return {s, false};
    }
    const Complex v = c.value();
    if (v.imag() == 0.0) return {formatDouble(std::abs(v.real())), v.real() < 0};
    std::string s = "(" + formatDouble(v.real());
    s += std::signbit(v.imag()) ? " - " : " + ";
    s += formatDouble(std::abs(v.imag())) + "*i)";
    return {s, false};
}

bool isUnitMagnitudeText(const std::string& s) { return s == "1"; }

std::string formatMonomial(const std::vector<std::string>& names, const ExponentVector& e) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[k];
        if (e[k] != 1) out += "^" + std::to_string(e[k]);
    }
    return out;
}

std::vector<std::size_t> firstAppearanceOrder(const LaurentPolynomial& p, std::vector<bool>& seen) {
    std::vector<std::size_t> order;
    for (const Term& t : p.terms()) {
        for (std::size_t k = 0; k < t.exponents.size(); ++k) {
            if (t.exponents[k] != 0 && !seen[k]) {
                seen[k] = true;
                order.push_back(k);
            }
        }
    }
    return order;
}

} // namespace

int totalDegree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0); }

Complex ExactComplex::toComplex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
}

ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::domain_error("division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <>
BigComplex Coefficient::as<BigComplex>() const {
    if (exact_) {
        BigComplex out;
        mpfr_set_q(out.re.raw(), exact_->re.backend().data(), MPFR_RNDN);
        mpfr_set_q(out.im.raw(), exact_->im.backend().data(), MPFR_RNDN);
        return out;
    }
    return fromComplex<BigComplex>(value_);
}

bool Coefficient::isZero() const {
    if (exact_) return exact_->isZero();
    return std::abs(value_) < kNegligible;
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    if (a.exact_ && b.exact_) return Coefficient(*a.exact_ + *b.exact_);
    return Coefficient(a.value_ + b.value_);
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (a.exact_ && b.exact_) return Coefficient(*a.exact_ * *b.exact_);
    return Coefficient(a.value_ * b.value_);
}

Coefficient Coefficient::operator-() const {
    if (exact_) return Coefficient(-*exact_);
    return Coefficient(-value_);
}

// ---------------------------------------------------------------------------

LaurentPolynomial::LaurentPolynomial(std::vector<std::string> variables, std::vector<Term> terms)
    : variables_(std::move(variables)) {
    for (const Term& t : terms) {
        if (t.exponents.size() != variables_.size()) {
            throw Error("exponent vector length does not match the variable count");
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlexGreater(a.exponents, b.exponents); });
    for (Term& t : terms) {
        if (!terms_.empty() && terms_.back().exponents == t.exponents) {
            terms_.back().coefficient = terms_.back().coefficient + t.coefficient;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const Term& t) { return t.coefficient.isZero(); });
}

bool LaurentPolynomial::isConstant() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
        return std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; });
    });
}

bool LaurentPolynomial::hasNegativeExponents() const {
    for (const Term& t : terms_)
        for (int e : t.exponents)
            if (e < 0) return true;
    return false;
}

int LaurentPolynomial::degree() const {
    int d = std::numeric_limits<int>::min();
    for (const Term& t : terms_) d = std::max(d, totalDegree(t.exponents));
    return terms_.empty() ? 0 : d;
}

LaurentPolynomial LaurentPolynomial::scaled(const Coefficient& c) const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const Term& t : terms_) terms.push_back({t.coefficient * c, t.exponents});
    return LaurentPolynomial(variables_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::multipliedByMonomial(const ExponentVector& shift) const {
    if (shift.size() != variableCount()) throw Error("monomial shift has wrong length");
    std::vector<Term> terms = terms_;
    for (Term& t : terms)
        for (std::size_t k = 0; k < shift.size(); ++k) t.exponents[k] += shift[k];
    return LaurentPolynomial(variables_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& other) const {
    if (other.variables_ != variables_) throw Error("adding polynomials over different variables");
    std::vector<Term> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return LaurentPolynomial(variables_, std::move(terms));
}

std::string LaurentPolynomial::toString() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const Term& t : terms_) {
        auto [coeff, negative] = formatCoefficient(t.coefficient);
        const std::string mono = formatMonomial(variables_, t.exponents);
        std::string body;
        if (mono.empty()) {
            body = coeff;
        } else if (isUnitMagnitudeText(coeff)) {
            body = mono;
        } else {
            body = coeff + "*" + mono;
        }
        if (out.empty()) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

PolySystem::PolySystem(std::vector<std::string> variables, std::vector<LaurentPolynomial> polynomials)
    : variables_(std::move(variables)), polynomials_(std::move(polynomials)) {
    if (polynomials_.empty()) throw Error("a polynomial system needs at least one polynomial");
    for (const auto& p : polynomials_) {
        if (p.variables() != variables_) throw Error("polynomials of a system must share the variable list");
    }
}

std::string PolySystem::toString() const {
    std::ostringstream os;
    os << size();
    if (variableCount() != size()) os << ' ' << variableCount();
    os << '\n';
    std::vector<bool> seen(variableCount(), false);
    std::vector<std::size_t> order;
    for (const auto& p : polynomials_) {
        auto part = firstAppearanceOrder(p, seen);
        order.insert(order.end(), part.begin(), part.end());
    }
    bool natural = order.size() == variableCount();
    for (std::size_t k = 0; natural && k < order.size(); ++k) natural = order[k] == k;
    if (!natural) {
        os << "vars: ";
        for (std::size_t k = 0; k < variableCount(); ++k) os << (k ? ", " : "") << variables_[k];
        os << ";\n";
    }
    for (const auto& p : polynomials_) os << p.toString() << ";\n";
    return os.str();
}

// ---------------------------------------------------------------------------

PolySystem rationalToLaurent(std::span<const std::pair<LaurentPolynomial, LaurentPolynomial>> equations) {
    if (equations.empty()) throw Error("rationalToLaurent: no equations");
    const auto& variables = equations.front().first.variables();
    std::vector<LaurentPolynomial> out;
    out.reserve(equations.size());
    for (std::size_t i = 0; i < equations.size(); ++i) {
        const auto& [num, den] = equations[i];
        if (den.variables() != variables || num.variables() != variables) {
            throw Error("rationalToLaurent: equations use different variables");
        }
        if (den.termCount() != 1) {
            throw UnsupportedDenominatorError(
                "equation " + std::to_string(i) +
                    ": denominator is not a monomial; multiply the equation through by it manually",
                i);
        }
        const Term& d = den.terms().front();
        const Coefficient inverse = d.coefficient.exact()
                                        ? Coefficient(ExactComplex{Rational(1), Rational(0)} / *d.coefficient.exact())
                                        : Coefficient(1.0 / d.coefficient.value());
        ExponentVector shift(d.exponents.size());
        for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = -d.exponents[k];
        out.push_back(num.scaled(inverse).multipliedByMonomial(shift));
    }
    return PolySystem(variables, std::move(out));
}

PolySystem clearNegativeExponents(const PolySystem& s) {
    std::vector<LaurentPolynomial> out;
    out.reserve(s.size());
    for (const auto& p : s.polynomials()) {
        if (!p.hasNegativeExponents()) {
            out.push_back(p);
            continue;
        }
        ExponentVector shift(s.variableCount(), 0);
        for (const Term& t : p.terms())
            for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = std::max(shift[k], -t.exponents[k]);
        out.push_back(p.multipliedByMonomial(shift));
    }
    return PolySystem(s.variables(), std::move(out));
}

std::uint64_t totalDegreeProduct(const PolySystem& s) {
    const PolySystem cleared = clearNegativeExponents(s);
    std::uint64_t product = 1;
    for (const auto& p : cleared.polynomials()) {
        const auto d = static_cast<std::uint64_t>(std::max(0, p.degree()));
        if (d != 0 && product > std::numeric_limits<std::uint64_t>::max() / d) {
            throw Error("total degree product overflows 64 bits");
        }
        product *= d;
    }
    return product;
}

LaurentPolynomial linearCombination(std::span<const LaurentPolynomial> polys, std::span<const Complex> weights) {
    if (polys.empty() || polys.size() != weights.size()) throw Error("linearCombination: size mismatch");
    std::vector<Term> terms;
    for (std::size_t j = 0; j < polys.size(); ++j) {
        for (const Term& t : polys[j].terms()) {
            terms.push_back({Coefficient(t.coefficient.value() * weights[j]), t.exponents});
        }
    }
    return LaurentPolynomial(polys.front().variables(), std::move(terms));
}

LaurentPolynomial affineLinear(const std::vector<std::string>& variables, std::span<const Complex> coefficients) {
    const std::size_t n = variables.size();
    if (coefficients.size() != n + 1) throw Error("affineLinear: expected n + 1 coefficients");
    std::vector<Term> terms;
    for (std::size_t k = 0; k <= n; ++k) {
        ExponentVector e(n, 0);
        if (k < n) e[k] = 1;
        terms.push_back({Coefficient(coefficients[k]), std::move(e)});
    }
    return LaurentPolynomial(variables, std::move(terms));
}

} // namespace hcont
