#include "hcont/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hcont {

namespace {
thread_local long tlsPrecision = 256;
}

long workingPrecision() noexcept { return tlsPrecision; }

PrecisionScope::PrecisionScope(long bits) : saved_(tlsPrecision) {
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) throw std::invalid_argument("precision out of range");
    tlsPrecision = bits;
}

PrecisionScope::~PrecisionScope() { tlsPrecision = saved_; }

BigFloat::BigFloat() {
    mpfr_init2(value_, tlsPrecision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value) {
    mpfr_init2(value_, tlsPrecision);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, long bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    // mpfr_swap needs an initialized target; the moved-from value stays valid.
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::fromString(const std::string& text, long bits) {
    BigFloat out(0.0, bits);
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a decimal number: " + text);
    }
    return out;
}

std::string BigFloat::toString(int digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (digits <= 0) {
        digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 1;
    }
    std::vector<char> buffer(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", digits, value_);
    return std::string(buffer.data());
}

void BigFloat::adoptPrecisionOf(const BigFloat& rhs) {
    if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
    adoptPrecisionOf(rhs);
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
    adoptPrecisionOf(rhs);
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
    adoptPrecisionOf(rhs);
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
    adoptPrecisionOf(rhs);
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const {
    BigFloat out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

BigFloat abs(const BigFloat& x) {
    BigFloat out(x);
    mpfr_abs(out.value_, out.value_, MPFR_RNDN);
    return out;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat out(x);
    mpfr_sqrt(out.value_, out.value_, MPFR_RNDN);
    return out;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat out(0.0, std::max(x.precision(), y.precision()));
    mpfr_hypot(out.value_, x.value_, y.value_, MPFR_RNDN);
    return out;
}

} // namespace hcont
