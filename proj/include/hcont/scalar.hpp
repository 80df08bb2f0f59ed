#pragma once

#include "hcont/bigfloat.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace hcont {

/// Minimal complex number over a real type without a std::complex
/// specialization (std::complex<BigFloat> is unspecified).
template <class Real>
struct BasicComplex {
    Real re;
    Real im;

    BasicComplex() : re(0.0), im(0.0) {}
    BasicComplex(Real r) : re(std::move(r)), im(0.0) {} // NOLINT(google-explicit-constructor)
    BasicComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    const Real& real() const { return re; }
    const Real& imag() const { return im; }

    BasicComplex& operator+=(const BasicComplex& z) { re += z.re; im += z.im; return *this; }
    BasicComplex& operator-=(const BasicComplex& z) { re -= z.re; im -= z.im; return *this; }
    BasicComplex& operator*=(const BasicComplex& z) { return *this = *this * z; }
    BasicComplex& operator/=(const BasicComplex& z) { return *this = *this / z; }

    friend BasicComplex operator+(BasicComplex a, const BasicComplex& b) { return a += b; }
    friend BasicComplex operator-(BasicComplex a, const BasicComplex& b) { return a -= b; }
    friend BasicComplex operator*(const BasicComplex& a, const BasicComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BasicComplex operator/(const BasicComplex& a, const BasicComplex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BasicComplex operator-() const { return {-re, -im}; }

    friend bool operator==(const BasicComplex& a, const BasicComplex& b) { return a.re == b.re && a.im == b.im; }
};

template <class Real>
BasicComplex<Real> conj(const BasicComplex<Real>& z) { return {z.re, -z.im}; }

using BigComplex = BasicComplex<BigFloat>;
using Complex = std::complex<double>;

// Scalar adapters shared by the precision-generic algorithms. Magnitudes are
// reported as doubles: every quantity compared against a tolerance here lies
// well inside the double exponent range.

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const BigComplex& z) { return hypot(z.re, z.im).toDouble(); }

inline Complex toComplex(const Complex& z) { return z; }
inline Complex toComplex(const BigComplex& z) { return {z.re.toDouble(), z.im.toDouble()}; }

template <class C>
C fromComplex(const Complex& z);

template <>
inline Complex fromComplex<Complex>(const Complex& z) { return z; }

template <>
inline BigComplex fromComplex<BigComplex>(const Complex& z) { return {BigFloat(z.real()), BigFloat(z.imag())}; }

inline Complex conjugate(const Complex& z) { return std::conj(z); }
inline BigComplex conjugate(const BigComplex& z) { return conj(z); }

/// Unit roundoff of the working precision: 2^-52 for double, 2^(1-bits)
/// for big floats at the calling thread's working precision.
template <class C>
double unitRoundoff();

template <>
inline double unitRoundoff<Complex>() { return std::numeric_limits<double>::epsilon(); }

template <>
inline double unitRoundoff<BigComplex>() { return std::ldexp(1.0, static_cast<int>(1 - workingPrecision())); }

} // namespace hcont
