#include "qkz/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qkz {
namespace {

const std::vector<std::string> kChecks = {
    "ybe",       "unitarity",    "twist-commute",      "transfer-commute",   "pole-expansion",
    "sum-rule",  "qkz-compat",   "omega",              "k-projection",       "proposition-higher",
    "det-identity", "symmetric-identity", "macdonald-eigenvalue", "correspondence"};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Entry {
  int line;
  std::string value;
};

[[noreturn]] void parse_error(int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

bool is_list(const std::string& v) { return !v.empty() && v.front() == '['; }

std::vector<std::string> list_items(const Entry& e) {
  const std::string& v = e.value;
  if (!is_list(v) || v.back() != ']') parse_error(e.line, "expected a list [a, b, ...]");
  std::vector<std::string> out;
  const std::string inner = trim(std::string_view(v).substr(1, v.size() - 2));
  if (inner.empty()) return out;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) parse_error(e.line, "empty list item");
    out.push_back(item);
  }
  return out;
}

Rational number(const Entry& e, const std::string& text) {
  try {
    return parse_number(text);
  } catch (const Error& err) {
    parse_error(e.line, "bad number '" + text + "'");
  }
}

std::vector<Rational> number_list(const Entry& e) {
  std::vector<Rational> out;
  for (const auto& item : list_items(e)) out.push_back(number(e, item));
  return out;
}

long integer(const Entry& e) {
  const Rational r = number(e, e.value);
  if (r.denominator() != 1 || !r.numerator().fits_slong_p()) parse_error(e.line, "expected an integer, got '" + e.value + "'");
  return r.numerator().get_si();
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }
std::string_view to_string(Format format) { return format == Format::Json ? "json" : "text"; }

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  throw Error(ErrorKind::ConfigError, "unknown format '" + std::string(text) + "' (json | text)");
}

const std::vector<std::string>& check_names() { return kChecks; }

bool is_sector_check(std::string_view name) {
  return name == "det-identity" || name == "symmetric-identity" || name == "macdonald-eigenvalue" ||
         name == "correspondence";
}

Rational parse_number(std::string_view raw) {
  const std::string text = trim(raw);
  const auto exp = text.find_first_of("eE");
  if (exp != std::string::npos) {
    const std::string mantissa = text.substr(0, exp);
    const std::string power = text.substr(exp + 1);
    if (mantissa.find('/') != std::string::npos || power.empty()) {
      throw Error(ErrorKind::ParseError, "bad number '" + text + "'");
    }
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(power, &used);
      if (used != power.size() || k < -400 || k > 400) throw std::invalid_argument(power);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number '" + text + "'");
    }
    return parse_number(mantissa) * pow(Rational(10), k);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  const bool negative = !text.empty() && text[0] == '-';
  const std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  const std::string whole = text.substr(start, dot - start);
  const std::string frac = text.substr(dot + 1);
  const auto digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
    throw Error(ErrorKind::ParseError, "bad number '" + text + "'");
  }
  mpz_class num(whole.empty() ? "0" : whole);
  mpz_class den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  const Rational r(num, den);
  return negative ? -r : r;
}

void set_tolerance(RunConfig& cfg, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::NonPositiveTolerance, "tol must be positive");
  cfg.tol = tol;
}

void set_checks(RunConfig& cfg, const std::vector<std::string>& names) {
  std::vector<bool> wanted(kChecks.size(), false);
  for (const auto& raw : names) {
    const std::string name = trim(raw);
    if (name == "all") {
      for (std::size_t k = 0; k < kChecks.size(); ++k) {
        // Spectral checks need eigensolvers; "all" in exact mode means the exact suite.
        if (kChecks[k] != "correspondence" || cfg.mode == Mode::Float) wanted[k] = true;
      }
      continue;
    }
    const auto it = std::find(kChecks.begin(), kChecks.end(), name);
    if (it == kChecks.end()) throw Error(ErrorKind::ConfigError, "unknown check '" + name + "'");
    wanted[static_cast<std::size_t>(it - kChecks.begin())] = true;
  }
  cfg.checks.clear();
  for (std::size_t k = 0; k < kChecks.size(); ++k) {
    if (wanted[k]) cfg.checks.push_back(kChecks[k]);
  }
}

void set_sectors(RunConfig& cfg, const std::vector<std::string>& specs) {
  std::vector<WeightSector> out;
  for (const auto& spec : specs) {
    if (trim(spec) == "all") {
      cfg.sectors.clear();
      return;
    }
    WeightSector M = parse_sector(spec);
    validate_sector(cfg.model.N, cfg.model.n, M);
    if (std::find(out.begin(), out.end(), M) == out.end()) out.push_back(M);
  }
  cfg.sectors = std::move(out);
}

std::vector<WeightSector> active_sectors(const RunConfig& cfg) {
  return cfg.sectors.empty() ? all_sectors(cfg.model.N, cfg.model.n) : cfg.sectors;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) parse_error(lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) parse_error(lineno, "missing key");
    if (value.empty()) parse_error(lineno, "missing value for '" + key + "'");
    if (!entries.emplace(key, Entry{lineno, value}).second) parse_error(lineno, "duplicate key '" + key + "'");
  }

  const auto take = [&](const std::string& key) -> std::optional<Entry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  };
  const auto require = [&](const std::string& key, const std::string& why) {
    auto e = take(key);
    if (!e) throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(lineno + 1) + " (end of input): missing key '" + key + "'" + why);
    return *e;
  };

  RunConfig cfg;
  const Entry model = require("model", "");
  try {
    cfg.model.flavor = parse_flavor(model.value);
  } catch (const Error&) {
    parse_error(model.line, "unknown model '" + model.value + "' (rational | trigonometric)");
  }
  const bool rational = cfg.model.flavor == Flavor::Rational;
  const std::string flavor_note = rational ? " (rational model)" : " (trigonometric model)";
  const Entry N = require("N", "");
  const Entry n = require("n", "");
  cfg.model.N = static_cast<int>(integer(N));
  cfg.model.n = static_cast<int>(integer(n));
  if (cfg.model.N < 1) parse_error(N.line, "N must be positive");
  if (cfg.model.n < 1) parse_error(n.line, "n must be positive");
  const auto scalar = [&](const std::string& key) {
    const Entry e = require(key, flavor_note);
    return number(e, e.value);
  };
  if (rational) {
    cfg.model.eta = scalar("eta");
    cfg.model.hbar = scalar("hbar");
    cfg.model.x = number_list(require("x", flavor_note));
    for (const char* other : {"t", "h", "u"}) {
      if (auto e = take(other)) parse_error(e->line, std::string("key '") + other + "' belongs to the trigonometric model");
    }
  } else {
    cfg.model.t = scalar("t");
    cfg.model.h = scalar("h");
    cfg.model.x = number_list(require("u", flavor_note));
    for (const char* other : {"eta", "hbar", "x"}) {
      if (auto e = take(other)) parse_error(e->line, std::string("key '") + other + "' belongs to the rational model");
    }
  }
  cfg.model.g = number_list(require("g", ""));

  if (auto e = take("mode")) {
    if (e->value == "exact") {
      cfg.mode = Mode::Exact;
    } else if (e->value == "float") {
      cfg.mode = Mode::Float;
    } else {
      parse_error(e->line, "mode must be exact or float");
    }
  }
  if (auto e = take("seed")) {
    const long seed = integer(*e);
    if (seed < 0) parse_error(e->line, "seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto e = take("tol")) {
    const Rational tol = number(*e, e->value);
    set_tolerance(cfg, tol.sign() > 0 ? to_float(tol).real() : 0.0);
  }
  if (auto e = take("format")) {
    try {
      cfg.format = parse_format(e->value);
    } catch (const Error&) {
      parse_error(e->line, "format must be json or text");
    }
  }
  if (auto e = take("workers")) {
    const long w = integer(*e);
    if (w < 1) parse_error(e->line, "workers must be positive");
    cfg.workers = static_cast<int>(w);
  }
  {
    const Entry* unknown = nullptr;
    std::string unknown_key;
    for (const auto& [key, e] : entries) {
      if (key == "checks" || key == "sectors") continue;
      if (!unknown || e.line < unknown->line) {
        unknown = &e;
        unknown_key = key;
      }
    }
    if (unknown) parse_error(unknown->line, "unknown key '" + unknown_key + "'");
  }

  validate(cfg.model);
  if (auto e = take("checks")) {
    set_checks(cfg, is_list(e->value) ? list_items(*e) : std::vector<std::string>{e->value});
  } else {
    set_checks(cfg, {"all"});
  }
  if (auto e = take("sectors")) {
    std::vector<std::string> specs;
    if (is_list(e->value)) {
      // Sector entries contain commas themselves, so they are separated by ';'.
      const std::string inner = trim(std::string_view(e->value).substr(1, e->value.size() - 2));
      std::stringstream ss(inner);
      std::string item;
      while (std::getline(ss, item, ';')) specs.push_back(trim(item));
    } else {
      specs.push_back(e->value);
    }
    try {
      set_sectors(cfg, specs);
    } catch (const Error& err) {
      parse_error(e->line, err.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qkz
