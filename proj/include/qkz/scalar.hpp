#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <string>

#include "qkz/error.hpp"
#include "qkz/rational.hpp"

namespace qkz {

using Complex = std::complex<double>;

/// Default tolerance of the floating domain (relative, with an absolute floor).
inline constexpr double kDefaultTolerance = 1e-10;

/// |a - b| <= tol * max(1, |a|, |b|). Throws NonPositiveTolerance for tol <= 0.
bool approx_eq(const Complex& a, const Complex& b, double tol);

/// Nearest double; throws Overflow when |a| exceeds the double range.
Complex to_float(const Rational& a);

/// Uniform arithmetic/equality contract over the two scalar domains.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static bool is_zero(const Rational& a) { return a.is_zero(); }
  static Rational from_rational(const Rational& r) { return r; }
  static void require_finite(const Rational&) {}
  static std::string str(const Rational& a) { return a.str(); }
  /// |a - b| / max(1, |a|, |b|), evaluated exactly and rounded once.
  static double relative_deviation(const Rational& a, const Rational& b);
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static bool is_zero(const Complex& a) { return a == Complex(0.0, 0.0); }
  static Complex from_rational(const Rational& r) { return to_float(r); }
  static void require_finite(const Complex& a) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorKind::NonFinite, "non-finite complex value");
    }
  }
  static std::string str(const Complex& a);
  static double relative_deviation(const Complex& a, const Complex& b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
  }
};

/// Integer power by repeated squaring; negative exponents invert. Throws
/// DivisionByZero for 0 to a negative power.
template <class S>
S ipow(const S& base, int exponent) {
  if (exponent < 0) {
    if (ScalarTraits<S>::is_zero(base)) throw Error(ErrorKind::DivisionByZero, "zero to a negative power");
    return ipow(S(1) / base, -exponent);
  }
  S result(1);
  S b = base;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result *= b;
    if (e > 1) b *= b;
  }
  return result;
}

/// Checked division; rejects exact zero divisors in both domains.
template <class S>
S checked_div(const S& a, const S& b) {
  if (ScalarTraits<S>::is_zero(b)) throw Error(ErrorKind::DivisionByZero, "division by zero");
  return a / b;
}

}  // namespace qkz

namespace Eigen {

template <>
struct NumTraits<qkz::Rational> : GenericNumTraits<qkz::Rational> {
  typedef qkz::Rational Real;
  typedef qkz::Rational NonInteger;
  typedef qkz::Rational Literal;
  typedef qkz::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qkz {
// Eigen looks these up by ADL for real-valued custom scalars.
inline const Rational& conj(const Rational& a) { return a; }
inline const Rational& real(const Rational& a) { return a; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& a) { return a * a; }
}  // namespace qkz
