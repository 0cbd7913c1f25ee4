#include "qkz/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qkz {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonPositiveTolerance: return "NonPositiveTolerance";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadWeight: return "BadWeight";
    case ErrorKind::BadSite: return "BadSite";
    case ErrorKind::BadColor: return "BadColor";
    case ErrorKind::NonInvertibleQ: return "NonInvertibleQ";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::GenericPositionViolation: return "GenericPositionViolation";
    case ErrorKind::DegeneracyUnresolved: return "DegeneracyUnresolved";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorKind::MatchFailure: return "MatchFailure";
    case ErrorKind::NeedsFloat: return "NeedsFloat";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool approx_eq(const Complex& a, const Complex& b, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::NonPositiveTolerance, "tolerance must be positive");
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Complex to_float(const Rational& a) { return Complex(a.to_double(), 0.0); }

double ScalarTraits<Rational>::relative_deviation(const Rational& a, const Rational& b) {
  const Rational diff = abs(a - b);
  if (diff.is_zero()) return 0.0;
  const Rational scale = std::max({Rational(1), abs(a), abs(b)});
  return (diff / scale).to_double();
}

std::string ScalarTraits<Complex>::str(const Complex& a) {
  std::ostringstream os;
  os.precision(17);
  os << a.real();
  if (a.imag() != 0.0) os << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
  return os.str();
}

}  // namespace qkz
