#include "qkz/check_result.hpp"

namespace qkz {

CheckBuilder::CheckBuilder(std::string name, bool exact, double tol, std::optional<WeightSector> sector) : exact_(exact), tol_(tol) {
  if (!(tol > 0)) throw Error(ErrorKind::NonPositiveTolerance, "check tolerance must be positive");
  result_.name = std::move(name);
  result_.sector = std::move(sector);
}

bool CheckBuilder::record(const Deviation& dev, std::string_view context) {
  const bool ok = accepts(dev, exact_, tol_);
  if (dev.residual > result_.residual) result_.residual = dev.residual;
  if (!ok) {
    result_.passed = false;
    if (!have_failure_) {
      result_.witness = std::string(context) + ": " + dev.witness;
      have_failure_ = true;
    }
  }
  return ok;
}

void CheckBuilder::fail(std::string_view context, std::string_view message) {
  result_.passed = false;
  if (!have_failure_) {
    result_.witness = std::string(context) + ": " + std::string(message);
    have_failure_ = true;
  }
}

void CheckBuilder::add_param(std::string_view param) {
  if (!result_.params.empty()) result_.params += "; ";
  result_.params += param;
}

}  // namespace qkz
