#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qkz/chain_operator.hpp"
#include "qkz/tensor_space.hpp"

namespace qkz {

/// Pass/fail record of one identity check.
struct CheckResult {
  std::string name;
  std::optional<WeightSector> sector;
  bool passed = true;
  /// Largest relative entry deviation; exactly 0 for exact passes.
  double residual = 0.0;
  /// Offending entry (or error) of the worst comparison, empty on pass.
  std::string witness;
  /// Sample points and other parameters the check used.
  std::string params;
};

/// Acceptance rule shared by all checks: exact equality in the exact domain,
/// residual <= tol in the float domain.
inline bool accepts(const Deviation& dev, bool exact, double tol) {
  return dev.exact_match || (!exact && dev.residual <= tol);
}

/// Scalar comparison in the same format as the operator comparisons.
template <class S>
Deviation compare_values(const S& a, const S& b) {
  Deviation dev;
  dev.exact_match = a == b;
  dev.residual = dev.exact_match ? 0.0 : ScalarTraits<S>::relative_deviation(a, b);
  if (!dev.exact_match) dev.witness = ScalarTraits<S>::str(a) + " vs " + ScalarTraits<S>::str(b);
  return dev;
}

/// Folds any number of comparisons into one CheckResult. In the exact domain a
/// comparison passes only on exact equality; in the float domain when the
/// residual is at most `tol`.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, bool exact, double tol, std::optional<WeightSector> sector = std::nullopt);

  /// Returns whether this comparison passed.
  bool record(const Deviation& dev, std::string_view context);
  /// Records a failure that has no residual (exception, pole, ...).
  void fail(std::string_view context, std::string_view message);
  void add_param(std::string_view param);

  bool passed() const { return result_.passed; }
  CheckResult finish() const { return result_; }

 private:
  CheckResult result_;
  bool exact_;
  double tol_;
  bool have_failure_ = false;
};

/// Builder for the domain of S.
template <class S>
CheckBuilder make_check(std::string name, double tol, std::optional<WeightSector> sector = std::nullopt) {
  return CheckBuilder(std::move(name), ScalarTraits<S>::exact, tol, std::move(sector));
}

/// Runs `body` and turns any library Error into a failed result named `name`.
template <class F>
CheckResult guarded(const std::string& name, std::optional<WeightSector> sector, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    CheckResult r;
    r.name = name;
    r.sector = std::move(sector);
    r.passed = false;
    r.residual = 0.0;
    r.witness = e.what();
    return r;
  }
}

}  // namespace qkz
