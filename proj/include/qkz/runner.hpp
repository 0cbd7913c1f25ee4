#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qkz/check_result.hpp"
#include "qkz/config.hpp"

namespace qkz {

struct RunReport {
  nlohmann::ordered_json config;
  std::vector<CheckResult> results;
  /// Wall-clock milliseconds per result; empty unless timing was requested.
  std::vector<double> millis;

  bool passed() const;
};

/// Echo of the configuration in report form (rationals as "p/q" strings).
nlohmann::ordered_json config_echo(const RunConfig& cfg);

/// Runs every configured check (sector checks once per active sector) and
/// collects one aggregated result per check and sector. Module errors become
/// failed results; the result order depends only on the configuration.
RunReport run(const RunConfig& cfg);

/// One check by name; `sector` is required for sector checks.
CheckResult run_check(const RunConfig& cfg, const std::string& name, const std::optional<WeightSector>& sector);

std::string emit(const RunReport& report, Format format);
/// Inverse of emit(report, Format::Json) on statuses, residuals and witnesses.
RunReport report_from_json(const std::string& text);

/// Joint eigenstates of one sector: H_i eigenvalues, K_i^{(0)} eigenvalues,
/// momenta and residuals.
std::string describe_spectrum(const RunConfig& cfg, const WeightSector& sector);
/// Lax spectra against the targets for each active sector. Sets `passed`.
std::string describe_correspondence(const RunConfig& cfg, bool& passed);

}  // namespace qkz
