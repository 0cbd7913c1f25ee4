#include "qkz/verification.hpp"

#include <functional>

namespace qkz {
namespace {

template <class S>
std::string str(const S& s) {
  return ScalarTraits<S>::str(s);
}

template <class S>
S trace(const ChainOperator<S>& a) {
  S sum(0);
  for (std::size_t k = 0; k < a.dim(); ++k) sum += a.coeff(k, k);
  return sum;
}

template <class S>
S x_of(const ModelConfig<S>& cfg, int i) {
  return cfg.x.at(static_cast<std::size_t>(i - 1));
}

std::string sites_label(const std::vector<int>& sites) {
  std::string out = "(";
  for (std::size_t k = 0; k < sites.size(); ++k) out += (k ? "," : "") + std::to_string(sites[k]);
  return out + ")";
}

// c_ij of the determinant identity.
template <class S>
S det_coefficient(const ModelConfig<S>& cfg, int i, int j) {
  if (cfg.flavor == Flavor::Rational) {
    return checked_div(cfg.eta, x_of(cfg, j) - x_of(cfg, i) + cfg.eta);
  }
  const S w = spectral_difference(cfg.flavor, x_of(cfg, j), x_of(cfg, i));
  return checked_div(sinh_exp(cfg.t), sinh_exp(w * cfg.t));
}

// (1 - eta^2 / (x_a - x_b)^2)^{-1} or (1 - sinh^2 eta / sinh^2(x_a - x_b))^{-1}.
template <class S>
S pair_weight(const ModelConfig<S>& cfg, int a, int b) {
  if (cfg.flavor == Flavor::Rational) {
    const S d = x_of(cfg, a) - x_of(cfg, b);
    return checked_div(d * d, d * d - cfg.eta * cfg.eta);
  }
  const S s = sinh_exp(spectral_difference(cfg.flavor, x_of(cfg, a), x_of(cfg, b)));
  const S se = sinh_exp(cfg.t);
  return checked_div(s * s, s * s - se * se);
}

template <class S>
std::vector<ChainOperator<S>> sector_hamiltonians(const ModelConfig<S>& cfg, const WeightSector& sector) {
  std::vector<ChainOperator<S>> out;
  for (const auto& H : hamiltonians(cfg)) out.push_back(restrict(H, sector));
  return out;
}

// Signed permutation expansion; row products taken in row order.
template <class S>
ChainOperator<S> operator_determinant(int n, const Domain& domain,
                                      const std::function<ChainOperator<S>(int, int)>& entry) {
  ChainOperator<S> det = ChainOperator<S>::zero(domain);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(int, int, const ChainOperator<S>&)> expand = [&](int row, int sign, const ChainOperator<S>& prefix) {
    if (row == n) {
      det = sign > 0 ? det + prefix : det - prefix;
      return;
    }
    for (int col = 0; col < n; ++col) {
      if (used[static_cast<std::size_t>(col)]) continue;
      const ChainOperator<S> e = entry(row, col);
      if (e.nonzeros() == 0) continue;
      int larger = 0;
      for (int c = col + 1; c < n; ++c) larger += used[static_cast<std::size_t>(c)] ? 1 : 0;
      used[static_cast<std::size_t>(col)] = true;
      expand(row + 1, (larger % 2) ? -sign : sign, prefix * e);
      used[static_cast<std::size_t>(col)] = false;
    }
  };
  expand(0, 1, ChainOperator<S>::identity(domain));
  return det;
}

// Monomial coefficients a_0..a_m of the polynomial through (z_k, v_k).
template <class S>
std::vector<S> interpolate(const std::vector<S>& z, std::vector<S> v) {
  const std::size_t m = z.size() - 1;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = m; i >= j; --i) v[i] = checked_div(v[i] - v[i - 1], z[i] - z[i - j]);
  }
  std::vector<S> poly{v[m]};
  for (std::size_t k = m; k-- > 0;) {
    std::vector<S> next(poly.size() + 1, S(0));
    for (std::size_t p = 0; p < poly.size(); ++p) {
      next[p + 1] += poly[p];
      next[p] -= z[k] * poly[p];
    }
    next[0] += v[k];
    poly = std::move(next);
  }
  return poly;
}

void require_degree(int d, int n) {
  if (d < 1 || d > n) throw Error(ErrorKind::ConfigError, "degree d = " + std::to_string(d) + " outside 1.." + std::to_string(n));
}

}  // namespace

template <class S>
Covector<S> projection_covector(const ModelConfig<S>& cfg) {
  return cfg.flavor == Flavor::Rational ? omega<S>(cfg.full_domain()) : omega_q<S>(cfg.full_domain(), cfg.t);
}

template <class S>
std::vector<S> spectral_targets(const ModelConfig<S>& cfg, const WeightSector& sector, const std::vector<S>& g) {
  validate_sector(cfg.N, cfg.n, sector);
  if (static_cast<int>(g.size()) != cfg.N) throw Error(ErrorKind::DimensionMismatch, "twist has wrong length");
  std::vector<S> out;
  for (int a = 1; a <= cfg.N; ++a) {
    const int M = sector.at(a);
    const S& ga = g[static_cast<std::size_t>(a - 1)];
    for (int alpha = 0; alpha < M; ++alpha) {
      out.push_back(cfg.flavor == Flavor::Rational ? ga : ga * ipow(cfg.t, 2 * alpha - M + 1));
    }
  }
  return out;
}

template <class S>
std::vector<S> spectral_targets(const ModelConfig<S>& cfg, const WeightSector& sector) {
  return spectral_targets(cfg, sector, cfg.g);
}

template <class S>
S elementary_symmetric(const std::vector<S>& values, int d) {
  if (d < 0) return S(0);
  std::vector<S> e(static_cast<std::size_t>(d) + 1, S(0));
  e[0] = S(1);
  for (const S& v : values) {
    for (int k = d; k >= 1; --k) e[static_cast<std::size_t>(k)] += v * e[static_cast<std::size_t>(k - 1)];
  }
  return e[static_cast<std::size_t>(d)];
}

template <class S>
S power_sum(const std::vector<S>& values, int k) {
  S sum(0);
  for (const S& v : values) sum += ipow(v, k);
  return sum;
}

template <class S>
S newton_elementary(const std::vector<S>& power_sums, int d) {
  if (static_cast<int>(power_sums.size()) < d) throw Error(ErrorKind::DimensionMismatch, "too few power sums");
  std::vector<S> e(static_cast<std::size_t>(d) + 1, S(0));
  e[0] = S(1);
  for (int m = 1; m <= d; ++m) {
    S acc(0);
    for (int k = 1; k <= m; ++k) {
      const S term = e[static_cast<std::size_t>(m - k)] * power_sums[static_cast<std::size_t>(k - 1)];
      acc += (k % 2) ? term : -term;
    }
    e[static_cast<std::size_t>(m)] = acc / S(static_cast<long>(m));
  }
  return e[static_cast<std::size_t>(d)];
}

template <class S>
std::vector<S> default_z_samples(int count) {
  static const Rational seeds[] = {Rational(0), Rational(1), Rational(2), Rational(-1), Rational(7, 3), Rational(-5, 2),
                                   Rational(11, 4), Rational(-13, 7), Rational(17, 5), Rational(-19, 6)};
  std::vector<S> out;
  for (int k = 0; k < count; ++k) {
    const Rational r = k < 10 ? seeds[k] : Rational(k) + Rational(1, k);
    out.push_back(ScalarTraits<S>::from_rational(r));
  }
  return out;
}

template <class S>
CheckResult check_omega_invariance(const ModelConfig<S>& cfg, double tol) {
  return guarded("omega", std::nullopt, [&] {
    auto check = make_check<S>("omega", tol);
    const auto w = projection_covector(cfg);
    const int N = cfg.N;
    const int n = cfg.n;
    if (cfg.flavor == Flavor::Rational) {
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          const std::string ij = std::to_string(i) + std::to_string(j);
          check.record(compare(apply_left(w, permutation<S>(i, j, N, n)), w), "<Omega|P_" + ij);
          const auto R = pair_embed(rational_r_local(site_difference(cfg, i, j), cfg.eta, N), i, j, N, n);
          check.record(compare(apply_left(w, R), w), "<Omega|R_" + ij);
        }
      }
      return check.finish();
    }
    for (int i = 2; i <= n; ++i) {
      const std::string ij = std::to_string(i) + "," + std::to_string(i - 1);
      check.record(compare(apply_left(w, q_permutation<S>(i, i - 1, cfg.t, N, n)), w), "<Omega_q|P^q_" + ij);
      const auto R = pair_embed(trig_r_local(site_difference(cfg, i, i - 1), cfg.t, N), i, i - 1, N, n);
      check.record(compare(apply_left(w, R), apply_left(w, permutation<S>(i, i - 1, N, n))), "<Omega_q|R_" + ij);
    }
    return check.finish();
  });
}

template <class S>
CheckResult check_omega_relation(const ModelConfig<S>& cfg, int i, int j, double tol) {
  return guarded("omega-relation", std::nullopt, [&] {
    auto check = make_check<S>("omega-relation", tol);
    check.add_param("i=" + std::to_string(i) + " j=" + std::to_string(j));
    const S q = cfg.flavor == Flavor::Rational ? S(1) : cfg.t;
    const auto w = projection_covector(cfg);
    check.record(compare(apply_left(w, q_permutation<S>(i, j, q, cfg.N, cfg.n)), w),
                 "<Omega_q|P^q_" + std::to_string(i) + "," + std::to_string(j));
    return check.finish();
  });
}

template <class S>
CheckResult check_k_projection(const ModelConfig<S>& cfg, int i, double tol) {
  return guarded("k-projection", std::nullopt, [&] {
    auto check = make_check<S>("k-projection", tol);
    check.add_param("i=" + std::to_string(i));
    const auto w = projection_covector(cfg);
    const int N = cfg.N;
    const int n = cfg.n;
    const std::string si = std::to_string(i);
    check.record(compare(apply_left(w, qkz_operator(cfg, i)), apply_left(w, qkz_operator(at_zero_hbar(cfg), i))),
                 "<Omega|K_" + si);
    const S xi = shifted(cfg, x_of(cfg, i));
    auto Rs = ChainOperator<S>::identity(cfg.full_domain());
    auto Ps = ChainOperator<S>::identity(cfg.full_domain());
    for (int j = i - 1; j >= 1; --j) {
      const S arg = spectral_difference(cfg.flavor, xi, x_of(cfg, j));
      Rs = Rs * pair_embed(r_local(cfg.flavor, arg, cfg.deformation(), N), i, j, N, n);
      Ps = Ps * permutation<S>(i, j, N, n);
    }
    check.record(compare(apply_left(w, Rs), apply_left(w, Ps)), "<Omega|R_" + si + ",i-1...R_" + si + "1");
    return check.finish();
  });
}

template <class S>
CheckResult check_proposition_higher(const ModelConfig<S>& cfg, const std::vector<int>& sites, double tol) {
  return guarded("proposition-higher", std::nullopt, [&] {
    auto check = make_check<S>("proposition-higher", tol);
    const std::string label = sites_label(sites);
    check.add_param("I=" + label);
    if (sites.empty()) throw Error(ErrorKind::ConfigError, "empty site subset");
    for (std::size_t k = 0; k < sites.size(); ++k) {
      if (sites[k] < 1 || sites[k] > cfg.n || (k && sites[k] <= sites[k - 1])) {
        throw Error(ErrorKind::BadSite, "site subset " + label + " must be increasing within 1.." + std::to_string(cfg.n));
      }
    }
    const auto w = projection_covector(cfg);
    const auto base = at_zero_hbar(cfg);
    auto lhs = w;
    for (std::size_t k = sites.size(); k-- > 0;) {
      const std::set<int> earlier(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(k));
      lhs = apply_left(lhs, qkz_operator(cfg, sites[k], earlier));
    }
    std::vector<ChainOperator<S>> K0;
    for (int s : sites) K0.push_back(qkz_operator(base, s));
    auto rhs = w;
    for (const auto& K : K0) rhs = apply_left(rhs, K);
    check.record(compare(lhs, rhs), "<Omega| shifted product " + label);
    auto reversed = w;
    for (std::size_t k = K0.size(); k-- > 0;) reversed = apply_left(reversed, K0[k]);
    check.record(compare(reversed, rhs), "K^(0) order " + label);
    return check.finish();
  });
}

template <class S>
CheckResult check_det_identity(const ModelConfig<S>& cfg, const WeightSector& sector, const std::vector<S>& z_samples,
                               double tol, const std::vector<S>* target_twist) {
  return guarded("det-identity", sector, [&] {
    auto check = make_check<S>("det-identity", tol, sector);
    const int n = cfg.n;
    validate_sector(cfg.N, n, sector);
    if (static_cast<int>(z_samples.size()) < n + 1) {
      throw Error(ErrorKind::ConfigError, "det identity needs at least n + 1 = " + std::to_string(n + 1) + " z samples");
    }
    const auto Hs = sector_hamiltonians(cfg, sector);
    const Domain domain = Hs.front().domain();
    const auto zero = ChainOperator<S>::zero(domain);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto& Hi = Hs[static_cast<std::size_t>(i)];
        const auto& Hj = Hs[static_cast<std::size_t>(j)];
        check.record(compare(commutator(Hi, Hj), zero), "[H_" + std::to_string(i + 1) + ", H_" + std::to_string(j + 1) + "]");
      }
    }
    if (!check.passed()) return check.finish();
    std::vector<std::vector<S>> c(static_cast<std::size_t>(n), std::vector<S>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = det_coefficient(cfg, i + 1, j + 1);
    }
    const auto targets = spectral_targets(cfg, sector, target_twist ? *target_twist : cfg.g);
    std::vector<S> values;
    std::string zs;
    for (const S& z : z_samples) {
      zs += (zs.empty() ? "" : ",") + str(z);
      const auto entry = [&](int i, int j) {
        const auto& Hi = Hs[static_cast<std::size_t>(i)];
        const S& cij = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (i == j) return z * ChainOperator<S>::identity(domain) - cij * Hi;
        return (-cij) * Hi;
      };
      const auto det = operator_determinant<S>(n, domain, entry);
      S target(1);
      for (const S& v : targets) target *= z - v;
      check.record(compare_scalar(det, target), "det at z = " + str(z));
      values.push_back(det.coeff(0, 0));
    }
    check.add_param("z=" + zs);
    const std::vector<S> zfit(z_samples.begin(), z_samples.begin() + n + 1);
    const std::vector<S> vfit(values.begin(), values.begin() + n + 1);
    const auto poly = interpolate(zfit, vfit);
    check.record(compare_values(poly[static_cast<std::size_t>(n)], S(1)), "leading z^" + std::to_string(n) + " coefficient");
    for (int d = 1; d <= n; ++d) {
      const S e = elementary_symmetric(targets, d);
      check.record(compare_values(poly[static_cast<std::size_t>(n - d)], (d % 2) ? -e : e),
                   "z^" + std::to_string(n - d) + " coefficient vs e_" + std::to_string(d));
    }
    return check.finish();
  });
}

template <class S>
ChainOperator<S> symmetric_combination(const ModelConfig<S>& cfg, const WeightSector& sector, int d) {
  require_degree(d, cfg.n);
  const auto Hs = sector_hamiltonians(cfg, sector);
  const Domain domain = Hs.front().domain();
  ChainOperator<S> sum = ChainOperator<S>::zero(domain);
  std::vector<int> I(static_cast<std::size_t>(d));
  std::function<void(int, int)> walk = [&](int pos, int start) {
    if (pos == d) {
      S weight(1);
      for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) weight *= pair_weight(cfg, I[static_cast<std::size_t>(a)], I[static_cast<std::size_t>(b)]);
      }
      ChainOperator<S> product = ChainOperator<S>::identity(domain);
      for (int s : I) product = product * Hs[static_cast<std::size_t>(s - 1)];
      sum = sum + weight * product;
      return;
    }
    for (int s = start; s <= cfg.n; ++s) {
      I[static_cast<std::size_t>(pos)] = s;
      walk(pos + 1, s + 1);
    }
  };
  walk(0, 1);
  return sum;
}

template <class S>
CheckResult check_symmetric_identity(const ModelConfig<S>& cfg, const WeightSector& sector, int d, double tol) {
  return guarded("symmetric-identity", sector, [&] {
    auto check = make_check<S>("symmetric-identity", tol, sector);
    check.add_param("d=" + std::to_string(d));
    require_degree(d, cfg.n);
    const auto targets = spectral_targets(cfg, sector);
    std::vector<S> p;
    for (int k = 1; k <= d; ++k) p.push_back(power_sum(targets, k));
    const S e = newton_elementary(p, d);
    check.record(compare_values(e, elementary_symmetric(targets, d)), "Newton e_" + std::to_string(d));
    const S half = S(1) / S(2);
    const S sixth = S(1) / S(6);
    if (d == 1) check.record(compare_values(e, p[0]), "e_1 = P_1");
    if (d == 2) check.record(compare_values(e, half * p[0] * p[0] - half * p[1]), "e_2 = (P_1^2 - P_2) / 2");
    if (d == 3) {
      check.record(compare_values(e, sixth * p[0] * p[0] * p[0] - half * p[0] * p[1] + S(1) / S(3) * p[2]),
                   "e_3 = P_1^3 / 6 - P_1 P_2 / 2 + P_3 / 3");
    }
    check.record(compare_scalar(symmetric_combination(cfg, sector, d), e), "weighted H products, d = " + std::to_string(d));
    return check.finish();
  });
}

template <class S>
CheckResult check_macdonald_eigenvalue(const ModelConfig<S>& cfg, const WeightSector& sector, int d, double tol) {
  return guarded("macdonald-eigenvalue", sector, [&] {
    auto check = make_check<S>("macdonald-eigenvalue", tol, sector);
    check.add_param("d=" + std::to_string(d));
    require_degree(d, cfg.n);
    const auto targets = spectral_targets(cfg, sector);
    const S E = elementary_symmetric(targets, d);
    if (d == 1) {
      S closed(0);
      for (int a = 1; a <= cfg.N; ++a) {
        const S& g = cfg.g[static_cast<std::size_t>(a - 1)];
        const int M = sector.at(a);
        closed += cfg.flavor == Flavor::Rational ? g * S(static_cast<long>(M))
                                                 : g * (ipow(cfg.t, M) - ipow(cfg.t, -M)) / (cfg.t - S(1) / cfg.t);
      }
      check.record(compare_values(E, closed), "E_1 closed form");
      check.record(compare_values(E, power_sum(targets, 1)), "E_1 string sum");
    }
    const auto lhs = symmetric_combination(cfg, sector, d);
    check.record(compare_scalar(lhs, E), "left side = E_" + std::to_string(d) + " I");
    check.record(compare_values(trace(lhs) / S(static_cast<long>(lhs.dim())), E), "trace / dim");
    return check.finish();
  });
}

#define QKZ_INSTANTIATE(S)                                                                                                \
  template Covector<S> projection_covector(const ModelConfig<S>&);                                                        \
  template std::vector<S> spectral_targets(const ModelConfig<S>&, const WeightSector&);                                   \
  template std::vector<S> spectral_targets(const ModelConfig<S>&, const WeightSector&, const std::vector<S>&);             \
  template S elementary_symmetric(const std::vector<S>&, int);                                                            \
  template S power_sum(const std::vector<S>&, int);                                                                       \
  template S newton_elementary(const std::vector<S>&, int);                                                               \
  template std::vector<S> default_z_samples(int);                                                                         \
  template CheckResult check_omega_invariance(const ModelConfig<S>&, double);                                             \
  template CheckResult check_omega_relation(const ModelConfig<S>&, int, int, double);                                     \
  template CheckResult check_k_projection(const ModelConfig<S>&, int, double);                                            \
  template CheckResult check_proposition_higher(const ModelConfig<S>&, const std::vector<int>&, double);                  \
  template CheckResult check_det_identity(const ModelConfig<S>&, const WeightSector&, const std::vector<S>&, double,      \
                                          const std::vector<S>*);                                                         \
  template ChainOperator<S> symmetric_combination(const ModelConfig<S>&, const WeightSector&, int);                       \
  template CheckResult check_symmetric_identity(const ModelConfig<S>&, const WeightSector&, int, double);                 \
  template CheckResult check_macdonald_eigenvalue(const ModelConfig<S>&, const WeightSector&, int, double);

QKZ_INSTANTIATE(Rational)
QKZ_INSTANTIATE(Complex)

#undef QKZ_INSTANTIATE

}  // namespace qkz
