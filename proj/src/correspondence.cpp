#include "qkz/correspondence.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qkz/sampling.hpp"
#include "qkz/verification.hpp"

namespace qkz {
namespace {

using Real = ExtendedReal;
using Cplx = ExtendedComplex;
using Matrix = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Column = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;

constexpr int kRedraws = 3;

Real to_real(const mpz_class& z) { return Real(z.get_str()); }

double magnitude(const Cplx& z) { return static_cast<double>(abs(z)); }

double relative(const Cplx& a, const Cplx& b) {
  return magnitude(a - b) / std::max({1.0, magnitude(a), magnitude(b)});
}

Matrix to_matrix(const ChainOperator<Rational>& op) {
  const auto d = static_cast<Eigen::Index>(op.dim());
  Matrix m = Matrix::Zero(d, d);
  op.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_extended(v);
  });
  return m;
}

Real vector_norm(const Column& v) {
  Real s = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s += norm(v(k));
  return sqrt(s);
}

Cplx inner(const Column& a, const Column& b) {
  Cplx s(0);
  for (Eigen::Index k = 0; k < a.size(); ++k) s += conj(a(k)) * b(k);
  return s;
}

std::vector<Cplx> eigenvalues_of(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "complex eigensolver did not converge");
  std::vector<Cplx> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

std::vector<Cplx> elementary(const std::vector<Cplx>& values) {
  std::vector<Cplx> e(values.size() + 1, Cplx(0));
  e[0] = Cplx(1);
  for (const Cplx& v : values) {
    for (std::size_t k = values.size(); k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

bool lex_less(const Cplx& a, const Cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<Cplx> sorted(std::vector<Cplx> v) {
  std::sort(v.begin(), v.end(), lex_less);
  return v;
}

}  // namespace

ExtendedComplex to_extended(const Rational& r) {
  return Cplx(to_real(r.numerator()) / to_real(r.denominator()), Real(0));
}

Complex to_double(const ExtendedComplex& z) {
  return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

std::string to_string(const ExtendedComplex& z, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << z.real();
  // Imaginary parts at the working-precision noise level are shown as real.
  const Real scale = std::max(Real(1), abs(z.real()));
  if (abs(z.imag()) > scale * Real(1e-30)) os << (z.imag() < 0 ? "-" : "+") << std::setprecision(digits) << abs(z.imag()) << "i";
  return os.str();
}

std::vector<JointEigenstate> diagonalize_sector(const ModelConfig<Rational>& cfg, const WeightSector& sector, double tol,
                                                std::uint64_t seed) {
  if (!(tol > 0)) throw Error(ErrorKind::NonPositiveTolerance, "diagonalization tolerance must be positive");
  validate_sector(cfg.N, cfg.n, sector);
  std::vector<Matrix> Hs;
  for (const auto& H : hamiltonians(cfg)) Hs.push_back(to_matrix(restrict(H, sector)));
  const Eigen::Index dim = Hs.front().rows();
  const auto n = Hs.size();

  if (dim == 1) {
    JointEigenstate st{sector, {Cplx(1)}, {}, std::vector<double>(n, 0.0)};
    for (const auto& H : Hs) st.eigenvalues.push_back(H(0, 0));
    return {st};
  }

  Sampler sampler(seed);
  double worst = 0.0;
  for (int attempt = 0; attempt <= kRedraws; ++attempt) {
    Matrix C = Matrix::Zero(dim, dim);
    for (const auto& H : Hs) C += Cplx(Real(sampler.real(0.5, 1.5))) * H;
    Eigen::ComplexEigenSolver<Matrix> solver(C, true);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "complex eigensolver did not converge");
    std::vector<JointEigenstate> states;
    worst = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      Column v = solver.eigenvectors().col(k);
      v /= Cplx(vector_norm(v));
      JointEigenstate st{sector, {}, {}, {}};
      for (Eigen::Index r = 0; r < dim; ++r) st.vector.push_back(v(r));
      for (const auto& H : Hs) {
        const Column Hv = H * v;
        const Cplx lambda = inner(v, Hv);
        const double res = static_cast<double>(vector_norm(Hv - lambda * v));
        st.eigenvalues.push_back(lambda);
        st.residuals.push_back(res);
        worst = std::max(worst, res);
      }
      states.push_back(std::move(st));
    }
    if (worst <= tol) return states;
  }
  std::ostringstream os;
  os << "joint eigenvector residual " << worst << " exceeds " << tol << " in sector " << to_string(sector) << " after "
     << kRedraws << " re-draws";
  throw Error(ErrorKind::DegeneracyUnresolved, os.str());
}

Momenta momenta_from_eigenvalues(const ModelConfig<Rational>& cfg, const JointEigenstate& state) {
  Momenta out;
  const Cplx scale = to_extended(residue_scale(cfg));
  const Cplx eta = cfg.flavor == Flavor::Rational ? to_extended(cfg.eta) : Cplx(log(to_extended(cfg.t).real()));
  for (int i = 1; i <= cfg.n; ++i) {
    const Cplx& lambda = state.eigenvalues.at(static_cast<std::size_t>(i - 1));
    const Cplx k = lambda / to_extended(hamiltonian_factor(cfg, i));
    if (k == Cplx(0)) throw Error(ErrorKind::ZeroEigenvalue, "K_" + std::to_string(i) + "^(0) eigenvalue is zero");
    out.k_eigenvalues.push_back(k);
    out.momenta.push_back(log(k) / eta);
    out.velocities.push_back(scale * lambda);
    if (k.real() < 0 && abs(k.imag()) <= abs(k.real()) * Real(1e-40)) out.branch_cut_sites.push_back(i);
  }
  return out;
}

LaxMatrix build_lax(const ModelConfig<Rational>& cfg, const std::vector<ExtendedComplex>& velocities) {
  if (static_cast<int>(velocities.size()) != cfg.n) throw Error(ErrorKind::DimensionMismatch, "need n velocities");
  LaxMatrix L{cfg.flavor, cfg.n, {}};
  for (int i = 1; i <= cfg.n; ++i) {
    for (int j = 1; j <= cfg.n; ++j) {
      Rational den;
      if (cfg.flavor == Flavor::Rational) {
        den = cfg.x[static_cast<std::size_t>(i - 1)] - cfg.x[static_cast<std::size_t>(j - 1)] + cfg.eta;
      } else {
        den = sinh_exp(site_difference(cfg, i, j) * cfg.t);
      }
      if (den.is_zero()) {
        throw Error(ErrorKind::PoleHit, "Lax entry (" + std::to_string(i) + "," + std::to_string(j) + ") has a zero denominator");
      }
      L.entries.push_back(velocities[static_cast<std::size_t>(j - 1)] / to_extended(den));
    }
  }
  return L;
}

std::vector<ExtendedComplex> lax_spectrum(const LaxMatrix& L) {
  Matrix m(L.n, L.n);
  for (int i = 1; i <= L.n; ++i) {
    for (int j = 1; j <= L.n; ++j) m(i - 1, j - 1) = L.at(i, j);
  }
  return sorted(eigenvalues_of(m));
}

std::vector<ExtendedComplex> classical_hamiltonians(const LaxMatrix& L) {
  const auto e = elementary(lax_spectrum(L));
  return std::vector<Cplx>(e.begin() + 1, e.end());
}

double matching_distance(const std::vector<ExtendedComplex>& a, const std::vector<ExtendedComplex>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::MatchFailure, "multisets of different size");
  const std::size_t n = a.size();
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t k = 0; k < n && worst < best; ++k) worst = std::max(worst, magnitude(a[k] - b[perm[k]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return n == 0 ? 0.0 : best;
  }
  const auto sa = sorted(a);
  std::vector<Cplx> rest = sorted(b);
  double worst = 0.0;
  for (const Cplx& v : sa) {
    auto it = std::min_element(rest.begin(), rest.end(),
                               [&](const Cplx& p, const Cplx& q) { return magnitude(p - v) < magnitude(q - v); });
    worst = std::max(worst, magnitude(*it - v));
    rest.erase(it);
  }
  return worst;
}

CorrespondenceReport check_correspondence(const ModelConfig<Rational>& cfg, const WeightSector& sector, double tol,
                                          std::uint64_t seed) {
  CorrespondenceReport report;
  report.sector = sector;
  const auto fail = [&](const std::string& why) {
    if (report.passed) report.witness = why;
    report.passed = false;
  };
  try {
    for (const auto& v : spectral_targets(cfg, sector)) report.targets.push_back(to_extended(v));
    report.targets = sorted(report.targets);
    const auto e = elementary(report.targets);
    report.target_hamiltonians.assign(e.begin() + 1, e.end());
    Rational e1(0);
    for (const auto& v : spectral_targets(cfg, sector)) e1 += v;
    const Cplx E1 = to_extended(e1);

    const auto states = diagonalize_sector(cfg, sector, tol, seed);
    for (std::size_t s = 0; s < states.size(); ++s) {
      const auto& st = states[s];
      EigenstateReport r;
      const Momenta mom = momenta_from_eigenvalues(cfg, st);
      r.eigenvalues = st.eigenvalues;
      r.velocities = mom.velocities;
      r.branch_cut_sites = mom.branch_cut_sites;
      const LaxMatrix L = build_lax(cfg, mom.velocities);
      r.lax_spectrum = lax_spectrum(L);
      r.matching_distance = matching_distance(r.lax_spectrum, report.targets);
      const auto h = elementary(r.lax_spectrum);
      r.classical.assign(h.begin() + 1, h.end());
      for (std::size_t d = 0; d < r.classical.size(); ++d) {
        r.hamiltonian_deviation = std::max(r.hamiltonian_deviation, relative(r.classical[d], report.target_hamiltonians[d]));
      }
      r.sum_rule_deviation = relative(std::accumulate(st.eigenvalues.begin(), st.eigenvalues.end(), Cplx(0)), E1);
      const double worst = std::max({r.matching_distance, r.hamiltonian_deviation, r.sum_rule_deviation});
      report.worst = std::max(report.worst, worst);
      if (worst > tol) {
        std::ostringstream os;
        os << to_string(ErrorKind::MatchFailure) << ": eigenstate " << s << ": Lax spectrum {";
        for (std::size_t k = 0; k < r.lax_spectrum.size(); ++k) os << (k ? ", " : "") << to_string(r.lax_spectrum[k]);
        os << "} deviates by " << worst;
        fail(os.str());
      }
      report.states.push_back(std::move(r));
    }
  } catch (const Error& e) {
    fail(e.what());
  }
  return report;
}

CheckResult to_check_result(const CorrespondenceReport& report, double tol) {
  CheckResult r;
  r.name = "correspondence";
  r.sector = report.sector;
  r.passed = report.passed;
  r.residual = report.worst;
  r.witness = report.witness;
  std::ostringstream os;
  os << "states=" << report.states.size() << " tol=" << tol;
  r.params = os.str();
  return r;
}

}  // namespace qkz
