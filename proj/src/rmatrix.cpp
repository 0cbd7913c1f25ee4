#include "qkz/rmatrix.hpp"

#include <algorithm>
#include <cctype>

namespace qkz {

std::string_view to_string(Flavor flavor) {
  return flavor == Flavor::Rational ? "rational" : "trigonometric";
}

Flavor parse_flavor(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "rational" || s == "xxx") return Flavor::Rational;
  if (s == "trigonometric" || s == "trig" || s == "xxz" || s == "hyperbolic") return Flavor::Trigonometric;
  throw Error(ErrorKind::ParseError, "unknown model flavor '" + std::string(text) + "'");
}

template <class S>
S spectral_difference(Flavor flavor, const S& a, const S& b) {
  if (flavor == Flavor::Rational) return a - b;
  if (ScalarTraits<S>::is_zero(b)) throw Error(ErrorKind::PoleHit, "exponential spectral parameter is zero");
  return a / b;
}

template <class S>
S spectral_negate(Flavor flavor, const S& a) {
  if (flavor == Flavor::Rational) return -a;
  if (ScalarTraits<S>::is_zero(a)) throw Error(ErrorKind::PoleHit, "exponential spectral parameter is zero");
  return S(1) / a;
}

template <class S>
S trig_weight(const S& u, const S& t) {
  if (ScalarTraits<S>::is_zero(u)) throw Error(ErrorKind::PoleHit, "u = e^x must be nonzero");
  if (ScalarTraits<S>::is_zero(t)) throw Error(ErrorKind::NonInvertibleQ, "t = e^eta must be nonzero");
  const S den = u * u * t * t - S(1);
  if (ScalarTraits<S>::is_zero(den)) throw Error(ErrorKind::PoleHit, "sinh(x + eta) = 0 at u = " + ScalarTraits<S>::str(u));
  return t * (u * u - S(1)) / den;
}

template <class S>
S trig_tilde_weight(const S& u, const S& t) {
  if (ScalarTraits<S>::is_zero(u)) throw Error(ErrorKind::PoleHit, "u = e^x must be nonzero");
  if (ScalarTraits<S>::is_zero(t)) throw Error(ErrorKind::NonInvertibleQ, "t = e^eta must be nonzero");
  const S den = t * (u * u - S(1));
  if (ScalarTraits<S>::is_zero(den)) throw Error(ErrorKind::PoleHit, "sinh(x) = 0 at u = " + ScalarTraits<S>::str(u));
  return (u * u * t * t - S(1)) / den;
}

template <class S>
S sinh_exp(const S& u) {
  if (ScalarTraits<S>::is_zero(u)) throw Error(ErrorKind::PoleHit, "u = e^x must be nonzero");
  return (u - S(1) / u) / S(2);
}

template <class S>
LocalMatrix<S> rational_r_local(const S& x, const S& eta, int N) {
  const S den = x + eta;
  if (ScalarTraits<S>::is_zero(den)) throw Error(ErrorKind::PoleHit, "x + eta = 0 at x = " + ScalarTraits<S>::str(x));
  const LocalMatrix<S> id = LocalMatrix<S>::Identity(N * N, N * N);
  return (x / den) * id + (eta / den) * permutation_local<S>(N);
}

template <class S>
LocalMatrix<S> rational_r_tilde_local(const S& x, const S& eta, int N) {
  if (ScalarTraits<S>::is_zero(x)) throw Error(ErrorKind::PoleHit, "x = 0 in R~");
  const LocalMatrix<S> id = LocalMatrix<S>::Identity(N * N, N * N);
  return id + (eta / x) * permutation_local<S>(N);
}

template <class S>
LocalMatrix<S> trig_r_local(const S& u, const S& t, int N) {
  const S w = trig_weight(u, t);
  const LocalMatrix<S> id = LocalMatrix<S>::Identity(N * N, N * N);
  return permutation_local<S>(N) + w * (id - q_permutation_local<S>(N, t));
}

template <class S>
LocalMatrix<S> trig_r_table_local(const S& u, const S& t, int N) {
  const S diag_weight = trig_weight(u, t);
  const S den = u * u * t * t - S(1);
  // e^{-x} sinh(eta) / sinh(x + eta) and e^{x} sinh(eta) / sinh(x + eta).
  const S lower = (t * t - S(1)) / den;
  const S upper = u * u * (t * t - S(1)) / den;
  LocalMatrix<S> m = LocalMatrix<S>::Constant(N * N, N * N, S(0));
  for (int a = 0; a < N; ++a) {
    m(a * N + a, a * N + a) = S(1);
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      m(a * N + b, a * N + b) = diag_weight;
      if (a < b) {
        m(a * N + b, b * N + a) = upper;  // e^{x} e_ab (x) e_ba
        m(b * N + a, a * N + b) = lower;  // e^{-x} e_ba (x) e_ab
      }
    }
  }
  return m;
}

template <class S>
LocalMatrix<S> trig_r_tilde_local(const S& u, const S& t, int N) {
  const S c = trig_tilde_weight(u, t);
  const LocalMatrix<S> id = LocalMatrix<S>::Identity(N * N, N * N);
  return id - q_permutation_local<S>(N, t) + c * permutation_local<S>(N);
}

template <class S>
LocalMatrix<S> r_local(Flavor flavor, const S& arg, const S& param, int N) {
  return flavor == Flavor::Rational ? rational_r_local(arg, param, N) : trig_r_local(arg, param, N);
}

template <class S>
LocalMatrix<S> r_tilde_local(Flavor flavor, const S& arg, const S& param, int N) {
  return flavor == Flavor::Rational ? rational_r_tilde_local(arg, param, N) : trig_r_tilde_local(arg, param, N);
}

template <class S>
S tilde_factor(Flavor flavor, const S& arg, const S& param) {
  if (flavor == Flavor::Trigonometric) return trig_tilde_weight(arg, param);
  if (ScalarTraits<S>::is_zero(arg)) throw Error(ErrorKind::PoleHit, "x = 0 in (x + eta) / x");
  return (arg + param) / arg;
}

template <class S>
ChainOperator<S> r_rational(int i, int j, const S& x, const S& eta, int N, int n) {
  return pair_embed(rational_r_local(x, eta, N), i, j, N, n);
}

template <class S>
ChainOperator<S> r_rational_tilde(int i, int j, const S& x, const S& eta, int N, int n) {
  return pair_embed(rational_r_tilde_local(x, eta, N), i, j, N, n);
}

template <class S>
ChainOperator<S> r_trig(int i, int j, const S& u, const S& t, int N, int n) {
  return pair_embed(trig_r_local(u, t, N), i, j, N, n);
}

template <class S>
ChainOperator<S> r_trig_tilde(int i, int j, const S& u, const S& t, int N, int n) {
  return pair_embed(trig_r_tilde_local(u, t, N), i, j, N, n);
}

template <class S>
CheckResult check_yang_baxter(Flavor flavor, const S& x, const S& y, const S& param, int N, double tol) {
  return guarded("ybe", std::nullopt, [&] {
    auto check = make_check<S>("ybe", tol);
    check.add_param("x=" + ScalarTraits<S>::str(x) + " y=" + ScalarTraits<S>::str(y) + " param=" + ScalarTraits<S>::str(param));
    const S xy = spectral_difference(flavor, x, y);
    // R~ = c R has an extra pole where R is regular (e.g. y = 0); there only R is checked.
    const auto regular = [&](const S& s) {
      return flavor == Flavor::Rational ? !ScalarTraits<S>::is_zero(s) : !ScalarTraits<S>::is_zero(s * s - S(1));
    };
    const bool tilde_defined = regular(xy) && regular(x) && regular(y);
    for (const bool tilde : {false, true}) {
      if (tilde && !tilde_defined) {
        check.add_param("R~ skipped at its pole");
        continue;
      }
      const auto R = [&](int i, int j, const S& s) {
        return pair_embed(tilde ? r_tilde_local(flavor, s, param, N) : r_local(flavor, s, param, N), i, j, N, 3);
      };
      const auto lhs = R(1, 2, xy) * R(1, 3, x) * R(2, 3, y);
      const auto rhs = R(2, 3, y) * R(1, 3, x) * R(1, 2, xy);
      check.record(compare(lhs, rhs), tilde ? "R~ triple product" : "R triple product");
    }
    return check.finish();
  });
}

template <class S>
CheckResult check_unitarity(Flavor flavor, const S& s, const S& param, int N, double tol) {
  return guarded("unitarity", std::nullopt, [&] {
    auto check = make_check<S>("unitarity", tol);
    check.add_param("s=" + ScalarTraits<S>::str(s) + " param=" + ScalarTraits<S>::str(param));
    const auto forward = pair_embed(r_local(flavor, s, param, N), 1, 2, N, 2);
    const auto backward = pair_embed(r_local(flavor, spectral_negate(flavor, s), param, N), 2, 1, N, 2);
    check.record(compare(forward * backward, ChainOperator<S>::identity(Domain::full(N, 2))), "R_12(s) R_21(-s)");
    return check.finish();
  });
}

template <class S>
CheckResult check_twist_commutation(Flavor flavor, const S& s, const S& param, const std::vector<S>& g, double tol) {
  return guarded("twist-commute", std::nullopt, [&] {
    auto check = make_check<S>("twist-commute", tol);
    check.add_param("s=" + ScalarTraits<S>::str(s));
    const int N = static_cast<int>(g.size());
    LocalMatrix<S> twist = LocalMatrix<S>::Constant(N, N, S(0));
    for (int a = 0; a < N; ++a) twist(a, a) = g[static_cast<std::size_t>(a)];
    const auto gg = site_embed(twist, 1, N, 2) * site_embed(twist, 2, N, 2);
    const auto zero = ChainOperator<S>::zero(Domain::full(N, 2));
    check.record(compare(commutator(gg, pair_embed(r_local(flavor, s, param, N), 1, 2, N, 2)), zero), "[g(x)g, R]");
    check.record(compare(commutator(gg, pair_embed(r_tilde_local(flavor, s, param, N), 1, 2, N, 2)), zero), "[g(x)g, R~]");
    return check.finish();
  });
}

#define QKZ_INSTANTIATE(S)                                                                                        \
  template S spectral_difference(Flavor, const S&, const S&);                                                     \
  template S spectral_negate(Flavor, const S&);                                                                   \
  template S trig_weight(const S&, const S&);                                                                     \
  template S trig_tilde_weight(const S&, const S&);                                                               \
  template S sinh_exp(const S&);                                                                                  \
  template LocalMatrix<S> rational_r_local(const S&, const S&, int);                                              \
  template LocalMatrix<S> rational_r_tilde_local(const S&, const S&, int);                                        \
  template LocalMatrix<S> trig_r_local(const S&, const S&, int);                                                  \
  template LocalMatrix<S> trig_r_table_local(const S&, const S&, int);                                            \
  template LocalMatrix<S> trig_r_tilde_local(const S&, const S&, int);                                            \
  template LocalMatrix<S> r_local(Flavor, const S&, const S&, int);                                               \
  template LocalMatrix<S> r_tilde_local(Flavor, const S&, const S&, int);                                         \
  template S tilde_factor(Flavor, const S&, const S&);                                                            \
  template ChainOperator<S> r_rational(int, int, const S&, const S&, int, int);                                   \
  template ChainOperator<S> r_rational_tilde(int, int, const S&, const S&, int, int);                             \
  template ChainOperator<S> r_trig(int, int, const S&, const S&, int, int);                                       \
  template ChainOperator<S> r_trig_tilde(int, int, const S&, const S&, int, int);                                 \
  template CheckResult check_yang_baxter(Flavor, const S&, const S&, const S&, int, double);                      \
  template CheckResult check_unitarity(Flavor, const S&, const S&, int, double);                                  \
  template CheckResult check_twist_commutation(Flavor, const S&, const S&, const std::vector<S>&, double);

QKZ_INSTANTIATE(Rational)
QKZ_INSTANTIATE(Complex)

#undef QKZ_INSTANTIATE

}  // namespace qkz
