#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkz/chain_model.hpp"

namespace qkz {

enum class Mode { Exact, Float };
enum class Format { Json, Text };

std::string_view to_string(Mode mode);
std::string_view to_string(Format format);
Format parse_format(std::string_view text);

/// Published check names, in report order.
const std::vector<std::string>& check_names();
/// Checks evaluated once per weight sector.
bool is_sector_check(std::string_view name);

struct RunConfig {
  ModelConfig<Rational> model;
  /// Expanded check names (no "all"), in report order.
  std::vector<std::string> checks;
  /// Requested sectors; empty means every sector.
  std::vector<WeightSector> sectors;
  /// Threshold of the float-domain comparisons; unset uses the defaults
  /// (kDefaultTolerance for identities, kSpectralTolerance for spectra).
  std::optional<double> tol;
  std::uint64_t seed = 0;
  Mode mode = Mode::Exact;
  Format format = Format::Json;
  int workers = 1;
  /// Include wall-clock time per result (breaks byte-identical reports).
  bool timing = false;
};

/// Parses `key = value` lines. `#` starts a comment; lists are `[a, b, c]`;
/// numbers are p/q, integers or decimals and are kept exact.
///
/// Keys: model, N, n, g, seed, tol, mode, checks, sectors, format, workers,
/// and eta, hbar, x (rational) or t, h, u (trigonometric).
/// Throws ParseError (with line number), ConfigError, NonPositiveTolerance,
/// BadWeight or GenericPositionViolation.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Replaces the check list, expanding "all" for the configured mode. Throws
/// ConfigError for unknown names.
void set_checks(RunConfig& cfg, const std::vector<std::string>& names);
/// Parses and validates "M1,M2,..." entries; "all" clears the list.
void set_sectors(RunConfig& cfg, const std::vector<std::string>& specs);
void set_tolerance(RunConfig& cfg, double tol);

/// Sectors the run visits: the requested ones or all_sectors(N, n).
std::vector<WeightSector> active_sectors(const RunConfig& cfg);

/// Exact number from "p/q", "p", a decimal such as "-1.25" or "2.5e-3". Throws ParseError.
Rational parse_number(std::string_view text);

}  // namespace qkz
