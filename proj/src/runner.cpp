#include "qkz/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

#include "qkz/correspondence.hpp"
#include "qkz/sampling.hpp"
#include "qkz/verification.hpp"

namespace qkz {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kRandomPoints = 3;

double identity_tol(const RunConfig& cfg) { return cfg.tol.value_or(kDefaultTolerance); }
double spectral_tol(const RunConfig& cfg) { return cfg.tol.value_or(kSpectralTolerance); }

// Independent, reproducible stream per check and sector.
std::uint64_t stream_seed(const RunConfig& cfg, const std::string& name, const std::optional<WeightSector>& sector) {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (char c : name) mix(static_cast<unsigned char>(c));
  if (sector) {
    for (int m : sector->counts) mix(static_cast<unsigned char>(m + 1));
  }
  return h ^ (cfg.seed * 0x9e3779b97f4a7c15ull);
}

CheckResult merge(const std::string& name, const std::optional<WeightSector>& sector, const std::vector<CheckResult>& parts) {
  CheckResult out;
  out.name = name;
  out.sector = sector;
  for (const auto& p : parts) {
    out.residual = std::max(out.residual, p.residual);
    if (!p.passed && out.passed) {
      out.passed = false;
      out.witness = p.witness;
    }
    if (!p.params.empty()) out.params += (out.params.empty() ? "" : " | ") + p.params;
  }
  return out;
}

CheckResult failed(const std::string& name, const std::optional<WeightSector>& sector, const std::string& why) {
  CheckResult r;
  r.name = name;
  r.sector = sector;
  r.passed = false;
  r.witness = why;
  return r;
}

template <class S>
ModelConfig<S> model_as(const RunConfig& cfg);

template <>
ModelConfig<Rational> model_as<Rational>(const RunConfig& cfg) {
  return cfg.model;
}

template <>
ModelConfig<Complex> model_as<Complex>(const RunConfig& cfg) {
  return to_float(cfg.model);
}

template <class S>
S lift(const Rational& r) {
  return ScalarTraits<S>::from_rational(r);
}

template <class S>
std::vector<CheckResult> global_check(const RunConfig& rc, const std::string& name) {
  const ModelConfig<S> cfg = model_as<S>(rc);
  const ModelConfig<Rational>& exact = rc.model;
  const double tol = identity_tol(rc);
  const Flavor fl = cfg.flavor;
  const S param = cfg.deformation();
  Sampler sampler(stream_seed(rc, name, std::nullopt));
  std::vector<CheckResult> parts;

  // Site differences of the configuration plus seeded spectral points.
  std::vector<S> points;
  for (int i = 1; i <= cfg.n; ++i) {
    for (int j = 1; j <= cfg.n; ++j) {
      if (i != j) points.push_back(site_difference(cfg, i, j));
    }
  }
  std::vector<std::pair<S, S>> pairs;
  for (int k = 0; k < kRandomPoints; ++k) {
    const auto [x, y] = random_spectral_pair(fl, exact.deformation(), sampler);
    pairs.emplace_back(lift<S>(x), lift<S>(y));
    points.push_back(lift<S>(x));
  }

  if (name == "ybe") {
    for (const auto& [x, y] : pairs) parts.push_back(check_yang_baxter(fl, x, y, param, cfg.N, tol));
  } else if (name == "unitarity") {
    for (const S& s : points) parts.push_back(check_unitarity(fl, s, param, cfg.N, tol));
  } else if (name == "twist-commute") {
    for (const S& s : points) parts.push_back(check_twist_commutation(fl, s, param, cfg.g, tol));
  } else if (name == "transfer-commute") {
    const auto samples = transfer_samples(cfg);
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
      parts.push_back(check_transfer_commutation(cfg, samples[k], samples[k + 1], tol));
    }
    parts.push_back(check_hamiltonian_structure(cfg, tol));
  } else if (name == "pole-expansion") {
    parts.push_back(check_pole_expansion(cfg, tol));
  } else if (name == "sum-rule") {
    parts.push_back(check_sum_rule(cfg, tol));
  } else if (name == "qkz-compat") {
    for (int i = 1; i <= cfg.n; ++i) {
      for (int j = i + 1; j <= cfg.n; ++j) parts.push_back(check_qkz_compatibility(cfg, i, j, tol));
    }
  } else if (name == "omega") {
    parts.push_back(check_omega_invariance(cfg, tol));
  } else if (name == "k-projection") {
    for (int i = 1; i <= cfg.n; ++i) parts.push_back(check_k_projection(cfg, i, tol));
  } else if (name == "proposition-higher") {
    for (unsigned mask = 1; mask < (1u << cfg.n); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < cfg.n; ++i) {
        if (mask >> i & 1u) I.push_back(i + 1);
      }
      parts.push_back(check_proposition_higher(cfg, I, tol));
    }
  } else {
    throw Error(ErrorKind::ConfigError, "unknown check '" + name + "'");
  }
  return parts;
}

template <class S>
std::vector<CheckResult> sector_check(const RunConfig& rc, const std::string& name, const WeightSector& M) {
  const ModelConfig<S> cfg = model_as<S>(rc);
  const double tol = identity_tol(rc);
  std::vector<CheckResult> parts;
  if (name == "det-identity") {
    parts.push_back(check_det_identity(cfg, M, default_z_samples<S>(cfg.n + 1), tol));
  } else if (name == "symmetric-identity") {
    for (int d = 1; d <= cfg.n; ++d) parts.push_back(check_symmetric_identity(cfg, M, d, tol));
  } else if (name == "macdonald-eigenvalue") {
    for (int d = 1; d <= cfg.n; ++d) parts.push_back(check_macdonald_eigenvalue(cfg, M, d, tol));
  } else {
    throw Error(ErrorKind::ConfigError, "unknown sector check '" + name + "'");
  }
  return parts;
}

struct Task {
  std::string name;
  std::optional<WeightSector> sector;
};

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

Json rational_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

std::string complex_list(const std::vector<ExtendedComplex>& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + to_string(v[k]);
  return out + "}";
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

Json config_echo(const RunConfig& cfg) {
  const auto& m = cfg.model;
  Json j;
  j["model"] = std::string(to_string(m.flavor));
  j["N"] = m.N;
  j["n"] = m.n;
  if (m.flavor == Flavor::Rational) {
    j["eta"] = m.eta.str();
    j["hbar"] = m.hbar.str();
    j["x"] = rational_list(m.x);
  } else {
    j["t"] = m.t.str();
    j["h"] = m.h.str();
    j["u"] = rational_list(m.x);
  }
  j["g"] = rational_list(m.g);
  j["seed"] = cfg.seed;
  if (cfg.tol) {
    j["tol"] = *cfg.tol;
  } else {
    j["tol"] = nullptr;
  }
  j["mode"] = std::string(to_string(cfg.mode));
  j["checks"] = cfg.checks;
  Json sectors = Json::array();
  for (const auto& M : active_sectors(cfg)) sectors.push_back(to_string(M));
  j["sectors"] = sectors;
  return j;
}

CheckResult run_check(const RunConfig& cfg, const std::string& name, const std::optional<WeightSector>& sector) {
  try {
    if (!is_sector_check(name)) {
      const auto parts = cfg.mode == Mode::Exact ? global_check<Rational>(cfg, name) : global_check<Complex>(cfg, name);
      return merge(name, std::nullopt, parts);
    }
    if (!sector) throw Error(ErrorKind::ConfigError, "check '" + name + "' needs a sector");
    validate_sector(cfg.model.N, cfg.model.n, *sector);
    if (name == "correspondence") {
      if (cfg.mode == Mode::Exact) {
        throw Error(ErrorKind::NeedsFloat, "correspondence needs eigensolvers; set mode = float");
      }
      const double tol = spectral_tol(cfg);
      return to_check_result(check_correspondence(cfg.model, *sector, tol, stream_seed(cfg, name, sector)), tol);
    }
    const auto parts = cfg.mode == Mode::Exact ? sector_check<Rational>(cfg, name, *sector) : sector_check<Complex>(cfg, name, *sector);
    return merge(name, sector, parts);
  } catch (const Error& e) {
    return failed(name, sector, e.what());
  }
}

RunReport run(const RunConfig& cfg) {
  std::vector<Task> tasks;
  const auto sectors = active_sectors(cfg);
  for (const auto& name : cfg.checks) {
    if (is_sector_check(name)) {
      for (const auto& M : sectors) tasks.push_back({name, M});
    } else {
      tasks.push_back({name, std::nullopt});
    }
  }
  RunReport report;
  report.config = config_echo(cfg);
  report.results.resize(tasks.size());
  std::vector<double> millis(tasks.size(), 0.0);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto start = std::chrono::steady_clock::now();
      report.results[k] = run_check(cfg, tasks[k].name, tasks[k].sector);
      millis[k] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int count = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (cfg.timing) report.millis = std::move(millis);
  return report;
}

std::string emit(const RunReport& report, Format format) {
  if (format == Format::Json) {
    Json j;
    j["config"] = report.config;
    Json results = Json::array();
    for (std::size_t k = 0; k < report.results.size(); ++k) {
      const auto& r = report.results[k];
      Json e;
      e["name"] = r.name;
      if (r.sector) {
        e["sector"] = to_string(*r.sector);
      } else {
        e["sector"] = nullptr;
      }
      e["status"] = r.passed ? "pass" : "fail";
      e["residual"] = r.residual;
      if (!r.witness.empty()) e["witness"] = r.witness;
      if (k < report.millis.size()) e["millis"] = report.millis[k];
      results.push_back(e);
    }
    j["results"] = results;
    j["overall"] = report.passed() ? "pass" : "fail";
    return j.dump(2) + "\n";
  }

  std::size_t wname = 5;
  std::size_t wsector = 6;
  for (const auto& r : report.results) {
    wname = std::max(wname, r.name.size());
    wsector = std::max(wsector, r.sector ? to_string(*r.sector).size() : 1);
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(wname) + 2) << "check" << std::setw(static_cast<int>(wsector) + 2) << "sector"
     << std::setw(8) << "status" << "residual";
  if (!report.millis.empty()) os << "      millis";
  os << "\n";
  for (std::size_t k = 0; k < report.results.size(); ++k) {
    const auto& r = report.results[k];
    os << std::left << std::setw(static_cast<int>(wname) + 2) << r.name << std::setw(static_cast<int>(wsector) + 2)
       << (r.sector ? to_string(*r.sector) : "-") << std::setw(8) << (r.passed ? "pass" : "fail") << format_residual(r.residual);
    if (k < report.millis.size()) os << "  " << std::right << std::setw(10) << std::fixed << std::setprecision(1) << report.millis[k];
    os << "\n";
    if (!r.passed) os << "    " << r.witness << "\n";
  }
  os << "overall: " << (report.passed() ? "pass" : "fail") << "\n";
  return os.str();
}

RunReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("report is not valid JSON: ") + e.what());
  }
  RunReport report;
  report.config = j.at("config");
  for (const auto& e : j.at("results")) {
    CheckResult r;
    r.name = e.at("name").get<std::string>();
    if (!e.at("sector").is_null()) r.sector = parse_sector(e.at("sector").get<std::string>());
    r.passed = e.at("status").get<std::string>() == "pass";
    r.residual = e.at("residual").get<double>();
    if (e.contains("witness")) r.witness = e.at("witness").get<std::string>();
    if (e.contains("millis")) report.millis.push_back(e.at("millis").get<double>());
    report.results.push_back(std::move(r));
  }
  return report;
}

std::string describe_spectrum(const RunConfig& cfg, const WeightSector& sector) {
  const auto states = diagonalize_sector(cfg.model, sector, spectral_tol(cfg), stream_seed(cfg, "correspondence", sector));
  std::ostringstream os;
  os << "sector " << to_string(sector) << ": " << states.size() << " joint eigenstate(s)\n";
  for (std::size_t s = 0; s < states.size(); ++s) {
    const Momenta m = momenta_from_eigenvalues(cfg.model, states[s]);
    double worst = 0.0;
    for (double r : states[s].residuals) worst = std::max(worst, r);
    os << "state " << s << "  residual " << format_residual(worst) << "\n";
    os << "  H eigenvalues    " << complex_list(states[s].eigenvalues) << "\n";
    os << "  K(0) eigenvalues " << complex_list(m.k_eigenvalues) << "\n";
    os << "  momenta          " << complex_list(m.momenta) << "\n";
    os << "  velocities       " << complex_list(m.velocities) << "\n";
    if (!m.branch_cut_sites.empty()) {
      os << "  principal log on the branch cut at sites";
      for (int i : m.branch_cut_sites) os << " " << i;
      os << "\n";
    }
  }
  return os.str();
}

std::string describe_correspondence(const RunConfig& cfg, bool& passed) {
  const double tol = spectral_tol(cfg);
  std::ostringstream os;
  passed = true;
  for (const auto& M : active_sectors(cfg)) {
    const auto rep = check_correspondence(cfg.model, M, tol, stream_seed(cfg, "correspondence", M));
    passed = passed && rep.passed;
    os << "sector " << to_string(M) << "  target " << complex_list(rep.targets) << "  " << (rep.passed ? "pass" : "fail")
       << "  worst " << format_residual(rep.worst) << "\n";
    for (std::size_t s = 0; s < rep.states.size(); ++s) {
      const auto& st = rep.states[s];
      os << "  state " << s << "  Lax spectrum " << complex_list(st.lax_spectrum) << "  distance "
         << format_residual(st.matching_distance) << "  H_d deviation " << format_residual(st.hamiltonian_deviation) << "\n";
    }
    if (!rep.passed) os << "  " << rep.witness << "\n";
  }
  return os.str();
}

}  // namespace qkz
