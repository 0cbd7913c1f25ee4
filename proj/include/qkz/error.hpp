#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qkz {

enum class ErrorKind {
  ZeroDenominator,
  DivisionByZero,
  NonPositiveTolerance,
  Overflow,
  NonFinite,
  ParseError,
  BadWeight,
  BadSite,
  BadColor,
  NonInvertibleQ,
  DimensionMismatch,
  DomainMismatch,
  NotBlockDiagonal,
  PoleHit,
  IdentityViolation,
  GenericPositionViolation,
  DegeneracyUnresolved,
  NonConvergence,
  ZeroEigenvalue,
  MatchFailure,
  NeedsFloat,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can map it to a report entry or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qkz
