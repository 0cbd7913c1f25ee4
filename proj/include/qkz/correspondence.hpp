#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qkz/chain_model.hpp"
#include "qkz/check_result.hpp"

namespace qkz {

/// 50 significant digits. Lax matrices on the level set have Jordan blocks of
/// size up to max M_a, so an eigenvalue perturbation of eps^{1/M} is expected;
/// double precision cannot reach 1e-8 once M_a >= 2.
using ExtendedReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;
using ExtendedComplex = std::complex<ExtendedReal>;

ExtendedComplex to_extended(const Rational& r);
Complex to_double(const ExtendedComplex& z);

/// Default acceptance threshold of the spectral checks.
inline constexpr double kSpectralTolerance = 1e-8;

struct JointEigenstate {
  WeightSector sector;
  /// Unit vector over the sector basis (enumerate_sector order).
  std::vector<ExtendedComplex> vector;
  /// Eigenvalue of H_i, i = 1..n.
  std::vector<ExtendedComplex> eigenvalues;
  /// ||H_i v - lambda_i v||.
  std::vector<double> residuals;
};

/// Joint eigenbasis of the sector-restricted H_i. Diagonalizes a random real
/// combination sum c_i H_i drawn from `seed` and reads each lambda_i as a
/// Rayleigh quotient. Throws DegeneracyUnresolved when a residual exceeds tol
/// after 3 re-draws, NonConvergence when the eigensolver fails.
std::vector<JointEigenstate> diagonalize_sector(const ModelConfig<Rational>& cfg, const WeightSector& sector, double tol,
                                                std::uint64_t seed);

struct Momenta {
  /// Eigenvalues e^{eta p_i} of K_i^{(0)}.
  std::vector<ExtendedComplex> k_eigenvalues;
  /// Principal-branch p_i = log(e^{eta p_i}) / eta.
  std::vector<ExtendedComplex> momenta;
  /// eta lambda_i (rational) or sinh(eta) lambda_i (trigonometric).
  std::vector<ExtendedComplex> velocities;
  /// Sites whose K eigenvalue lies on the negative real axis, where the
  /// principal branch is ambiguous.
  std::vector<int> branch_cut_sites;
};

/// Throws ZeroEigenvalue.
Momenta momenta_from_eigenvalues(const ModelConfig<Rational>& cfg, const JointEigenstate& state);

struct LaxMatrix {
  Flavor flavor = Flavor::Rational;
  int n = 0;
  /// Row-major n x n.
  std::vector<ExtendedComplex> entries;

  const ExtendedComplex& at(int i, int j) const { return entries[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
};

/// L_ij = v_j / (x_i - x_j + eta) or v_j / sinh(x_i - x_j + eta). Throws PoleHit.
LaxMatrix build_lax(const ModelConfig<Rational>& cfg, const std::vector<ExtendedComplex>& velocities);
/// Throws NonConvergence.
std::vector<ExtendedComplex> lax_spectrum(const LaxMatrix& L);
/// H_d = e_d(spectrum), d = 1..n.
std::vector<ExtendedComplex> classical_hamiltonians(const LaxMatrix& L);

/// Smallest over all pairings of the largest |a_k - b_pi(k)| (exhaustive for
/// up to 8 entries, sorted greedy pairing above that).
double matching_distance(const std::vector<ExtendedComplex>& a, const std::vector<ExtendedComplex>& b);

struct EigenstateReport {
  std::vector<ExtendedComplex> eigenvalues;
  std::vector<ExtendedComplex> velocities;
  std::vector<ExtendedComplex> lax_spectrum;
  std::vector<ExtendedComplex> classical;
  std::vector<int> branch_cut_sites;
  double matching_distance = 0.0;
  /// max_d |H_d - e_d(target)| / max(1, |e_d(target)|).
  double hamiltonian_deviation = 0.0;
  /// |sum_i lambda_i - E_1| / max(1, |E_1|).
  double sum_rule_deviation = 0.0;
};

struct CorrespondenceReport {
  WeightSector sector;
  std::vector<ExtendedComplex> targets;
  std::vector<ExtendedComplex> target_hamiltonians;
  std::vector<EigenstateReport> states;
  double worst = 0.0;
  bool passed = true;
  std::string witness;
};

/// Full spectral pipeline for one sector. Errors are reported, not thrown.
CorrespondenceReport check_correspondence(const ModelConfig<Rational>& cfg, const WeightSector& sector, double tol,
                                          std::uint64_t seed);

CheckResult to_check_result(const CorrespondenceReport& report, double tol);

std::string to_string(const ExtendedComplex& z, int digits = 12);

}  // namespace qkz
