// Acceptance criteria 1-11. Prints one [PASS]/[FAIL] line per criterion and
// exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "qkz/config.hpp"
#include "qkz/correspondence.hpp"
#include "qkz/runner.hpp"
#include "qkz/sampling.hpp"
#include "qkz/verification.hpp"

using namespace qkz;
using Cfg = ModelConfig<Rational>;

namespace {

// Spectral acceptance threshold (criterion 9).
constexpr double kSpectralTol = 1e-8;

struct Tally {
  int checks = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;

  // Exact checks must pass with residual exactly zero.
  void exact(const CheckResult& r) {
    ++checks;
    worst = std::max(worst, r.residual);
    if (!r.passed || r.residual != 0.0) note(r.name + (r.sector ? " " + to_string(*r.sector) : "") + ": " + r.witness);
  }
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) note(what);
  }
  void note(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Tally&)> body;
};

const std::vector<Flavor> kFlavors{Flavor::Rational, Flavor::Trigonometric};

std::string flavor_tag(Flavor f) { return f == Flavor::Rational ? "rational" : "trig"; }

void criterion_rmatrix(Tally& t) {
  Sampler s(101);
  for (Flavor fl : kFlavors) {
    for (int N = 2; N <= 3; ++N) {
      for (int draw = 0; draw < 10; ++draw) {
        const Rational param = random_deformation(fl, s);
        const auto [x, y] = random_spectral_pair(fl, param, s);
        std::vector<Rational> g;
        for (int a = 0; a < N; ++a) g.push_back(s.nonzero(7, 3));
        t.exact(check_yang_baxter(fl, x, y, param, N));
        t.exact(check_unitarity(fl, x, param, N));
        t.exact(check_twist_commutation(fl, x, param, g));
      }
    }
  }
}

void criterion_transfer(Tally& t) {
  Sampler s(202);
  for (Flavor fl : kFlavors) {
    for (int N = 2; N <= 3; ++N) {
      for (int n = 1; n <= 4; ++n) {
        const Cfg c = random_model(fl, N, n, s);
        t.exact(check_pole_expansion(c));
        const auto pts = transfer_samples(c);
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) t.exact(check_transfer_commutation(c, pts[k], pts[k + 1]));
      }
    }
  }
}

void criterion_sum_rules(Tally& t) {
  Sampler s(303);
  for (Flavor fl : kFlavors) {
    for (int N = 1; N <= 3; ++N) {
      for (int n = 1; n <= 4; ++n) t.exact(check_sum_rule(random_model(fl, N, n, s)));
    }
  }
}

void criterion_compatibility(Tally& t) {
  Sampler s(404);
  for (Flavor fl : kFlavors) {
    for (int n = 2; n <= 4; ++n) {
      for (int draw = 0; draw < 2; ++draw) {
        const Cfg c = random_model(fl, 2, n, s);
        for (int i = 1; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j) t.exact(check_qkz_compatibility(c, i, j));
      }
    }
  }
}

void criterion_covectors(Tally& t) {
  Sampler s(505);
  for (Flavor fl : kFlavors) {
    for (int N = 2; N <= 3; ++N) {
      for (int n = 1; n <= 4; ++n) {
        const Cfg c = random_model(fl, N, n, s);
        t.exact(check_omega_invariance(c));
        for (int i = 1; i <= n; ++i) t.exact(check_k_projection(c, i));
      }
    }
  }
}

void criterion_proposition(Tally& t) {
  Sampler s(606);
  for (Flavor fl : kFlavors) {
    const int max_n = fl == Flavor::Rational ? 4 : 3;
    for (int n = 1; n <= max_n; ++n) {
      const Cfg c = random_model(fl, 2, n, s);
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> I;
        for (int k = 0; k < n; ++k)
          if (mask >> k & 1u) I.push_back(k + 1);
        t.exact(check_proposition_higher(c, I));
      }
    }
  }
}

void criterion_determinant(Tally& t) {
  Sampler s(707);
  for (Flavor fl : kFlavors) {
    for (int N = 2; N <= 3; ++N) {
      for (int n = 1; n <= 4; ++n) {
        const Cfg c = random_model(fl, N, n, s);
        for (const auto& M : all_sectors(N, n)) {
          t.exact(check_det_identity(c, M, default_z_samples<Rational>(n + 1)));
        }
      }
    }
  }
}

void criterion_symmetric(Tally& t) {
  Sampler s(808);
  for (Flavor fl : kFlavors) {
    for (int N = 2; N <= 3; ++N) {
      for (int n = 1; n <= 4; ++n) {
        const Cfg c = random_model(fl, N, n, s);
        for (const auto& M : all_sectors(N, n)) {
          for (int d = 1; d <= n; ++d) {
            t.exact(check_symmetric_identity(c, M, d));
            t.exact(check_macdonald_eigenvalue(c, M, d));
          }
        }
      }
    }
  }
  // Worked values: M = (2, 1), g = (2, 3) gives E_1 = 7 and E_2 = 16.
  Cfg ref;
  ref.N = 2;
  ref.n = 3;
  ref.eta = Rational(1) / Rational(2);
  ref.x = {0, Rational(2) / Rational(5), Rational(9) / Rational(7)};
  ref.g = {2, 3};
  const auto targets = spectral_targets(ref, WeightSector{{2, 1}});
  t.expect(elementary_symmetric(targets, 1) == Rational(7), "E_1 != 7");
  t.expect(elementary_symmetric(targets, 2) == Rational(16), "E_2 != 16");
}

void record_correspondence(Tally& t, const Cfg& c, const std::string& tag) {
  for (const auto& M : all_sectors(c.N, c.n)) {
    const auto rep = check_correspondence(c, M, kSpectralTol, 1);
    ++t.checks;
    t.worst = std::max(t.worst, rep.worst);
    bool ok = rep.passed && rep.states.size() == sector_dimension(M);
    for (const auto& st : rep.states) {
      ok = ok && st.matching_distance <= kSpectralTol && st.hamiltonian_deviation <= kSpectralTol;
    }
    if (!ok) t.note(tag + " " + to_string(M) + ": " + rep.witness);
  }
}

void criterion_correspondence(Tally& t) {
  Cfg ref;
  ref.N = 2;
  ref.n = 3;
  ref.eta = Rational(1) / Rational(2);
  ref.hbar = Rational(1) / Rational(3);
  ref.x = {0, Rational(2) / Rational(5), Rational(9) / Rational(7)};
  ref.g = {2, 3};
  validate(ref);
  record_correspondence(t, ref, "rational reference");
  Sampler s(909);
  for (int n = 1; n <= 3; ++n) {
    record_correspondence(t, random_model(Flavor::Rational, 2, n, s), "rational n=" + std::to_string(n));
    record_correspondence(t, random_model(Flavor::Trigonometric, 2, n, s), "trig n=" + std::to_string(n));
  }
}

std::string reference_config(Flavor fl) {
  if (fl == Flavor::Rational) {
    return "model = rational\nN = 2\nn = 3\neta = 1/2\nhbar = 1/3\nx = [0, 2/5, 9/7]\ng = [2, 3]\nseed = 1\n";
  }
  return "model = trigonometric\nN = 2\nn = 3\nt = 2\nh = 5/4\nu = [1, 3/2, 7/3]\ng = [2, 3]\nseed = 1\n";
}

void criterion_negative(Tally& t) {
  // Perturbed twist in the determinant target, every sector of both flavors.
  for (Flavor fl : kFlavors) {
    const Cfg c = parse_config(reference_config(fl)).model;
    std::vector<Rational> bumped = c.g;
    bumped[0] += Rational(1);
    for (const auto& M : all_sectors(c.N, c.n)) {
      if (M.at(1) == 0) continue;
      const auto r = check_det_identity(c, M, default_z_samples<Rational>(c.n + 1), kDefaultTolerance, &bumped);
      t.expect(!r.passed && r.residual > 0.0 && !r.witness.empty(),
               flavor_tag(fl) + " det identity accepted a perturbed twist on " + to_string(M));
    }
    // Same perturbation in the float spectral pipeline.
    Cfg wrong = c;
    wrong.g[0] += Rational(1);
    const auto states = diagonalize_sector(c, WeightSector{{2, 1}}, kSpectralTol, 1);
    std::vector<ExtendedComplex> target;
    for (const auto& v : spectral_targets(wrong, WeightSector{{2, 1}})) target.push_back(to_extended(v));
    for (const auto& st : states) {
      const auto L = build_lax(c, momenta_from_eigenvalues(c, st).velocities);
      t.expect(matching_distance(lax_spectrum(L), target) > kSpectralTol, flavor_tag(fl) + " Lax spectrum matched a perturbed twist");
    }
  }
  // Wrong index order in the q-covector relation.
  const Cfg trig = parse_config(reference_config(Flavor::Trigonometric)).model;
  t.expect(!check_omega_relation(trig, 1, 2).passed, "omega_q accepted P^q_{12}");
  // Generic-position violations at load.
  const std::vector<std::pair<std::string, std::string>> collisions{
      {"x = [0, 2/5, 9/7]", "x = [0, 1/2, 9/7]"},
      {"x = [0, 2/5, 9/7]", "x = [0, 2/5, 2/5]"},
      {"x = [0, 2/5, 9/7]", "x = [0, 2/5, -1/10]"},
      {"u = [1, 3/2, 7/3]", "u = [1, 2, 7/3]"},
      {"u = [1, 3/2, 7/3]", "u = [1, 3/2, -3/2]"},
      {"u = [1, 3/2, 7/3]", "u = [1, 3/2, 3/4]"},
  };
  for (const auto& [from, to] : collisions) {
    std::string text = reference_config(from[0] == 'x' ? Flavor::Rational : Flavor::Trigonometric);
    text.replace(text.find(from), from.size(), to);
    bool raised = false;
    try {
      parse_config(text);
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::GenericPositionViolation;
    }
    t.expect(raised, "no GenericPositionViolation for " + to);
  }
  // A colliding model that bypasses validation fails in the run, never passes.
  RunConfig rc = parse_config(reference_config(Flavor::Rational));
  rc.model.x[1] = rc.model.x[0] + rc.model.eta;
  set_checks(rc, {"all"});
  const auto report = run(rc);
  t.expect(!report.passed(), "run passed on a colliding model");
}

std::string capture(const std::string& cmd, int& status) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

void criterion_determinism(Tally& t) {
  for (Flavor fl : kFlavors) {
    for (const char* mode : {"exact", "float"}) {
      RunConfig c = parse_config(reference_config(fl) + "mode = " + mode + "\n");
      set_checks(c, {"all"});
      const std::string a = emit(run(c), Format::Json);
      const std::string b = emit(run(c), Format::Json);
      c.workers = 4;
      const std::string w = emit(run(c), Format::Json);
      t.expect(a == b && a == w, flavor_tag(fl) + " " + mode + " report differs between runs");
    }
  }
  const std::string cmd = std::string(QKZ_WORKBENCH) + " verify --config " + QKZ_SOURCE_DIR +
                          "/configs/rational_float.cfg --seed 5 --workers 3";
  int s1 = 0, s2 = 0;
  const std::string r1 = capture(cmd, s1);
  const std::string r2 = capture(cmd, s2);
  t.expect(s1 == 0 && s2 == 0 && !r1.empty() && r1 == r2, "workbench output differs between runs");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Yang-Baxter, unitarity and twist commutation", 5, criterion_rmatrix},
      {2, "transfer-matrix commutativity and pole expansion", 30, criterion_transfer},
      {3, "sum rules", 10, criterion_sum_rules},
      {4, "qKZ compatibility", 30, criterion_compatibility},
      {5, "covector lemmas", 10, criterion_covectors},
      {6, "higher-Hamiltonian proposition", 60, criterion_proposition},
      {7, "determinant identity", 60, criterion_determinant},
      {8, "symmetric-function identity and eigenvalues", 60, criterion_symmetric},
      {9, "quantum-classical correspondence", 60, criterion_correspondence},
      {10, "negative controls", 60, criterion_negative},
      {11, "deterministic reports", 60, criterion_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(t);
    } catch (const std::exception& e) {
      t.note(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool ok = t.failures == 0 && in_time && t.checks > 0;
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << ": " << t.checks << " checks, max residual "
         << t.worst << ", " << std::fixed;
    line.precision(2);
    line << seconds << " s (budget " << c.budget_seconds << " s)";
    if (!t.first_failure.empty()) line << "; first failure: " << t.first_failure;
    if (!in_time) line << "; over budget";
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
