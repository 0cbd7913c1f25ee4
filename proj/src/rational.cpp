#include "qkz/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

#include "qkz/error.hpp"

namespace qkz {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational normalize(const mpz_class& num, const mpz_class& den) { return Rational(num, den); }

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  const auto bad = [&] { return Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'"); };
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) throw bad();
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (negative) n = -n;
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1) / value_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  value_ /= o.value_;
  return *this;
}

double Rational::to_double() const {
  if (is_zero()) return 0.0;
  // Long division to 54-55 significant bits, then round-half-even on the
  // dropped bits with the remainder as sticky bit.
  mpz_class a = abs(value_.get_num());
  const mpz_class& b = value_.get_den();
  const long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
  const long k = 54 - e;
  mpz_class scaled_a = a, scaled_b = b;
  if (k >= 0) {
    mpz_mul_2exp(scaled_a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(scaled_b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_a.get_mpz_t(), scaled_b.get_mpz_t());
  const long extra = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;
  mpz_class mantissa = q;
  if (extra > 0) {
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(extra));
    mpz_fdiv_q_2exp(mantissa.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(extra));
    const mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(extra - 1);
    const int c = cmp(low, half);
    const bool sticky = sgn(r) != 0;
    if (c > 0 || (c == 0 && (sticky || mpz_odd_p(mantissa.get_mpz_t())))) mantissa += 1;
  }
  const double m = mantissa.get_d();  // at most 2^53, exact
  const double result = std::ldexp(m, static_cast<int>(std::max<long>(extra, 0) - k));
  if (!std::isfinite(result)) throw Error(ErrorKind::Overflow, "rational exceeds double range: " + str());
  return sign() < 0 ? -result : result;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace qkz
