#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

namespace hcont {

/// Arbitrary-mantissa binary floating point number backed by MPFR.
///
/// Every value carries its own mantissa length. Values created without an
/// explicit precision (default construction, conversion from double) take the
/// calling thread's working precision, see PrecisionScope. Binary operations
/// round to the larger of the two operand precisions.
class BigFloat {
public:
    BigFloat();
    BigFloat(double value); // NOLINT(google-explicit-constructor)
    BigFloat(double value, long bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    /// Parses a decimal string at the given precision.
    static BigFloat fromString(const std::string& text, long bits);

    long precision() const noexcept { return mpfr_get_prec(value_); }
    double toDouble() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Decimal representation with the given number of significant digits.
    /// digits = 0 picks enough digits to represent the mantissa.
    std::string toString(int digits = 0) const;

    mpfr_ptr raw() noexcept { return value_; }
    mpfr_srcptr raw() const noexcept { return value_; }

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);

    friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
    BigFloat operator-() const;

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

    friend BigFloat abs(const BigFloat& x);
    friend BigFloat sqrt(const BigFloat& x);
    friend BigFloat hypot(const BigFloat& x, const BigFloat& y);

private:
    void adoptPrecisionOf(const BigFloat& rhs);

    mpfr_t value_;
};

/// Working precision, in bits, for BigFloat values created on this thread.
long workingPrecision() noexcept;

/// RAII guard that sets the calling thread's working precision.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

} // namespace hcont
