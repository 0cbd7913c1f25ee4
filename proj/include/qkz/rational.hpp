#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qkz {

/// Exact rational number backed by GMP. Always stored in lowest terms with a
/// positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit, integers embed in Q
  Rational(const mpz_class& num, const mpz_class& den);

  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  Rational inverse() const;

  /// Correctly rounded (nearest, ties to even). Throws Overflow when the
  /// magnitude exceeds the double range.
  double to_double() const;
  std::string str() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_;
};

/// Reduce num/den to lowest terms with positive denominator. Throws
/// ZeroDenominator for den = 0.
Rational normalize(const mpz_class& num, const mpz_class& den);
inline Rational normalize(long num, long den) { return normalize(mpz_class(num), mpz_class(den)); }

Rational abs(const Rational& a);
Rational pow(const Rational& base, int exponent);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace qkz
