#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qkz/chain_operator.hpp"
#include "qkz/check_result.hpp"

namespace qkz {

enum class Flavor { Rational, Trigonometric };

std::string_view to_string(Flavor flavor);
/// Accepts "rational" / "trigonometric" (also "trig", "xxx", "xxz").
Flavor parse_flavor(std::string_view text);

// Spectral parameters: the rational flavor uses the additive parameter x and
// eta; the trigonometric flavor works in exponential variables u = e^x and
// t = e^eta, so every entry is a rational function of (u, t).

/// x - y (rational) or u / v (trigonometric).
template <class S>
S spectral_difference(Flavor flavor, const S& a, const S& b);
/// -x (rational) or 1 / u (trigonometric).
template <class S>
S spectral_negate(Flavor flavor, const S& a);

/// sinh(x) / sinh(x + eta) = t (u^2 - 1) / (u^2 t^2 - 1). PoleHit at u^2 t^2 = 1.
template <class S>
S trig_weight(const S& u, const S& t);
/// sinh(x + eta) / sinh(x) = (u^2 t^2 - 1) / (t (u^2 - 1)). PoleHit at u^2 = 1.
template <class S>
S trig_tilde_weight(const S& u, const S& t);
/// sinh(x) expressed through u = e^x: (u - 1/u) / 2.
template <class S>
S sinh_exp(const S& u);

/// (x I + eta P) / (x + eta) on C^N (x) C^N.
template <class S>
LocalMatrix<S> rational_r_local(const S& x, const S& eta, int N);
/// I + (eta / x) P.
template <class S>
LocalMatrix<S> rational_r_tilde_local(const S& x, const S& eta, int N);
/// P + [sinh x / sinh(x + eta)] (I - P^t).
template <class S>
LocalMatrix<S> trig_r_local(const S& u, const S& t, int N);
/// Same operator assembled entry by entry from the e_aa (x) e_bb / e_ab (x) e_ba
/// table with weights sinh x / sinh(x+eta) and e^{+-x} sinh eta / sinh(x+eta).
template <class S>
LocalMatrix<S> trig_r_table_local(const S& u, const S& t, int N);
/// I - P^t + [sinh(x + eta) / sinh x] P.
template <class S>
LocalMatrix<S> trig_r_tilde_local(const S& u, const S& t, int N);

/// Flavor dispatch: `arg` is x or u, `param` is eta or t.
template <class S>
LocalMatrix<S> r_local(Flavor flavor, const S& arg, const S& param, int N);
template <class S>
LocalMatrix<S> r_tilde_local(Flavor flavor, const S& arg, const S& param, int N);
/// Scalar c(arg) with R~ = c R: (x + eta) / x or sinh(x + eta) / sinh x.
template <class S>
S tilde_factor(Flavor flavor, const S& arg, const S& param);

template <class S>
ChainOperator<S> r_rational(int i, int j, const S& x, const S& eta, int N, int n);
template <class S>
ChainOperator<S> r_rational_tilde(int i, int j, const S& x, const S& eta, int N, int n);
template <class S>
ChainOperator<S> r_trig(int i, int j, const S& u, const S& t, int N, int n);
template <class S>
ChainOperator<S> r_trig_tilde(int i, int j, const S& u, const S& t, int N, int n);

/// R_12(x-y) R_13(x) R_23(y) = R_23(y) R_13(x) R_12(x-y) on V^{(x)3}, for both R
/// and R~.
template <class S>
CheckResult check_yang_baxter(Flavor flavor, const S& x, const S& y, const S& param, int N, double tol = kDefaultTolerance);
/// R_12(s) R_21(-s) = I on V (x) V.
template <class S>
CheckResult check_unitarity(Flavor flavor, const S& s, const S& param, int N, double tol = kDefaultTolerance);
/// [g (x) g, R(s)] = 0 and [g (x) g, R~(s)] = 0 for diagonal g.
template <class S>
CheckResult check_twist_commutation(Flavor flavor, const S& s, const S& param, const std::vector<S>& g,
                                    double tol = kDefaultTolerance);

}  // namespace qkz
