#pragma once

#include <vector>

#include "qkz/chain_model.hpp"
#include "qkz/check_result.hpp"

namespace qkz {

/// <Omega| (rational) or <Omega_q| with q = t (trigonometric) on the full space.
template <class S>
Covector<S> projection_covector(const ModelConfig<S>& cfg);

/// Eigenvalue multiset of the twist on a sector: g_a repeated M_a times
/// (rational) or the strings g_a t^{2 alpha - M_a + 1}, alpha = 0..M_a-1
/// (trigonometric).
template <class S>
std::vector<S> spectral_targets(const ModelConfig<S>& cfg, const WeightSector& sector);
/// Same multiset for an explicit twist (used to inject wrong targets).
template <class S>
std::vector<S> spectral_targets(const ModelConfig<S>& cfg, const WeightSector& sector, const std::vector<S>& g);

/// e_d of a multiset by the product expansion of prod (1 + v z); e_0 = 1.
template <class S>
S elementary_symmetric(const std::vector<S>& values, int d);
template <class S>
S power_sum(const std::vector<S>& values, int k);
/// e_d from p_1..p_d via d e_d = sum_{k=1}^{d} (-1)^{k-1} e_{d-k} p_k.
template <class S>
S newton_elementary(const std::vector<S>& power_sums, int d);

/// Default z samples 0, 1, 2, -1, 7/3, ... (count entries, all distinct).
template <class S>
std::vector<S> default_z_samples(int count);

/// Rational: <Omega| P_ij = <Omega| and <Omega| R_ij(x_i - x_j) = <Omega| for all
/// i != j. Trigonometric: <Omega_q| P^q_{i,i-1} = <Omega_q| and
/// <Omega_q| R_{i,i-1} = <Omega_q| P_{i,i-1} for i = 2..n.
template <class S>
CheckResult check_omega_invariance(const ModelConfig<S>& cfg, double tol = kDefaultTolerance);
/// <Omega_q| P^q_{ij} = <Omega_q| for one ordered pair (q = 1 for rational).
template <class S>
CheckResult check_omega_relation(const ModelConfig<S>& cfg, int i, int j, double tol = kDefaultTolerance);
/// <Omega_q| K_i^{(hbar)} = <Omega_q| K_i^{(0)}, together with the intermediate
/// <Omega_q| R_{i,i-1} ... R_{i1} = <Omega_q| P_{i,i-1} ... P_{i1}.
template <class S>
CheckResult check_k_projection(const ModelConfig<S>& cfg, int i, double tol = kDefaultTolerance);
/// Covector form of the higher-Hamiltonian Proposition for I = (i_1 < ... < i_d):
/// <Omega| K_{i_d}(shifted i_1..i_{d-1}) ... K_{i_1} = <Omega| K_{i_1}^{(0)} ... K_{i_d}^{(0)},
/// plus independence of the right side from the factor order.
template <class S>
CheckResult check_proposition_higher(const ModelConfig<S>& cfg, const std::vector<int>& sites,
                                     double tol = kDefaultTolerance);
/// det(z delta_ij - c_ij H_i) = prod (z - target) on the sector at every z
/// sample, with c_ij = eta / (x_j - x_i + eta) or sinh eta / sinh(x_j - x_i + eta).
/// Also interpolates the z polynomial and checks its coefficients and degree.
/// `target_twist` replaces g in the target multiset only.
template <class S>
CheckResult check_det_identity(const ModelConfig<S>& cfg, const WeightSector& sector, const std::vector<S>& z_samples,
                               double tol = kDefaultTolerance, const std::vector<S>* target_twist = nullptr);
/// sum_{|I| = d} prod_{alpha < beta} w(x_{i_alpha} - x_{i_beta}) H_{i_1} ... H_{i_d} = e_d * I on the sector,
/// with e_d from Newton's identities and, for d <= 3, the explicit power-sum forms.
template <class S>
CheckResult check_symmetric_identity(const ModelConfig<S>& cfg, const WeightSector& sector, int d,
                                     double tol = kDefaultTolerance);
/// E_d = e_d(target multiset) against the full left side of the symmetric
/// identity and its trace / dim; d = 1 also against the closed sum rule value.
template <class S>
CheckResult check_macdonald_eigenvalue(const ModelConfig<S>& cfg, const WeightSector& sector, int d,
                                       double tol = kDefaultTolerance);

/// Left side of the symmetric identity restricted to `sector`.
template <class S>
ChainOperator<S> symmetric_combination(const ModelConfig<S>& cfg, const WeightSector& sector, int d);

}  // namespace qkz
