#pragma once

#include <set>
#include <string>
#include <vector>

#include "qkz/chain_operator.hpp"
#include "qkz/check_result.hpp"
#include "qkz/rmatrix.hpp"

namespace qkz {

/// Parameters of the twisted chain and its qKZ connection.
///
/// Rational flavor: `x` holds x_i, `eta` and `hbar` are used.
/// Trigonometric flavor: `x` holds u_i = e^{x_i}, `t` = e^eta and
/// `h` = e^{eta hbar} are used.
template <class S>
struct ModelConfig {
  Flavor flavor = Flavor::Rational;
  int N = 2;
  int n = 1;
  S eta = S(0);
  S hbar = S(0);
  S t = S(1);
  S h = S(1);
  std::vector<S> x;
  std::vector<S> g;

  /// eta (rational) or t (trigonometric).
  const S& deformation() const { return flavor == Flavor::Rational ? eta : t; }
  Domain full_domain() const { return Domain::full(N, n); }
};

/// Checks sizes, g_a != 0 and generic position of the inhomogeneities. Throws
/// ConfigError / BadWeight / GenericPositionViolation (e.g. "x_2 - x_1 = eta").
template <class S>
void validate(const ModelConfig<S>& cfg);

/// Same configuration with hbar = 0 (h = 1).
template <class S>
ModelConfig<S> at_zero_hbar(const ModelConfig<S>& cfg);

/// Exact configuration converted to the float domain.
ModelConfig<Complex> to_float(const ModelConfig<Rational>& cfg);

/// x_a - x_b or u_a / u_b (1-based sites).
template <class S>
S site_difference(const ModelConfig<S>& cfg, int a, int b);
/// x + eta hbar or u h.
template <class S>
S shifted(const ModelConfig<S>& cfg, const S& coordinate);
/// sinh eta = (t - 1/t) / 2 for the trigonometric flavor; eta for rational.
template <class S>
S residue_scale(const ModelConfig<S>& cfg);

/// diag(g) as an N x N matrix.
template <class S>
LocalMatrix<S> twist_matrix(const ModelConfig<S>& cfg);

/// K_i^{(hbar)} with x_s -> x_s + eta hbar for s in `shifted_sites` applied first.
template <class S>
ChainOperator<S> qkz_operator(const ModelConfig<S>& cfg, int i, const std::set<int>& shifted_sites = {});
template <class S>
ChainOperator<S> hamiltonian(const ModelConfig<S>& cfg, int i);
template <class S>
std::vector<ChainOperator<S>> hamiltonians(const ModelConfig<S>& cfg);
/// Scalar c_i with H_i = c_i K_i^{(0)}.
template <class S>
S hamiltonian_factor(const ModelConfig<S>& cfg, int i);
template <class S>
ChainOperator<S> weight_operator(const ModelConfig<S>& cfg, int a);
/// T(x0); `x0` is the spectral point x0 (rational) or u0 = e^{x0}.
template <class S>
ChainOperator<S> transfer_matrix(const ModelConfig<S>& cfg, const S& x0);

/// Constant term and residues of T: rational T(x) = constant + eta sum H_j / (x - x_j),
/// trigonometric T(x) = constant + sinh eta sum H_k coth(x - x_k).
template <class S>
struct TransferExpansion {
  ChainOperator<S> constant;
  std::vector<ChainOperator<S>> residues;
  /// eta or sinh eta.
  S scale;
  /// Spectral points used for the reconstruction.
  std::vector<S> samples;
};

/// n+1 spectral points outside every pole of T, deterministic in cfg.
template <class S>
std::vector<S> transfer_samples(const ModelConfig<S>& cfg);

/// Verifies the reconstruction at transfer_samples(cfg). Throws IdentityViolation.
template <class S>
TransferExpansion<S> pole_expansion(const ModelConfig<S>& cfg, double tol = kDefaultTolerance);

/// sum_a g_a M_a (rational) or sum_a g_a [M_a]_t with [m]_t = (t^m - t^{-m}) / (t - t^{-1}).
template <class S>
ChainOperator<S> sum_rule_target(const ModelConfig<S>& cfg);
/// sum_a g_a t^{s M_a} for s = +1 / -1: the values of T at x -> +-infinity.
template <class S>
ChainOperator<S> transfer_limit(const ModelConfig<S>& cfg, int sign);

template <class S>
CheckResult check_pole_expansion(const ModelConfig<S>& cfg, double tol = kDefaultTolerance);
template <class S>
CheckResult check_sum_rule(const ModelConfig<S>& cfg, double tol = kDefaultTolerance);
/// (shift_i K_j) K_i = (shift_j K_i) K_j.
template <class S>
CheckResult check_qkz_compatibility(const ModelConfig<S>& cfg, int i, int j, double tol = kDefaultTolerance);
/// [T(x), T(x')] = 0.
template <class S>
CheckResult check_transfer_commutation(const ModelConfig<S>& cfg, const S& x0, const S& x1, double tol = kDefaultTolerance);
/// [H_i, H_j] = [H_i, M_a] = 0 and H_i = c_i K_i^{(0)} for all i, j, a.
template <class S>
CheckResult check_hamiltonian_structure(const ModelConfig<S>& cfg, double tol = kDefaultTolerance);

}  // namespace qkz
