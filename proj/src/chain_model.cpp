#include "qkz/chain_model.hpp"

#include <algorithm>

namespace qkz {
namespace {

template <class S>
std::string str(const S& s) {
  return ScalarTraits<S>::str(s);
}

std::string coord(const char* name, int site) { return std::string(name) + "_" + std::to_string(site); }

template <class S>
ChainOperator<S> chain_product(const ModelConfig<S>& cfg, int i, const std::vector<S>& xs, bool shift_left, bool tilde) {
  const int N = cfg.N;
  const int n = cfg.n;
  const S& param = cfg.deformation();
  const auto local = [&](const S& arg) {
    return tilde ? r_tilde_local(cfg.flavor, arg, param, N) : r_local(cfg.flavor, arg, param, N);
  };
  const S xi = xs[static_cast<std::size_t>(i - 1)];
  const S xi_left = shift_left ? shifted(cfg, xi) : xi;
  ChainOperator<S> result = ChainOperator<S>::identity(cfg.full_domain());
  for (int j = i - 1; j >= 1; --j) {
    const S arg = spectral_difference(cfg.flavor, xi_left, xs[static_cast<std::size_t>(j - 1)]);
    result = result * pair_embed(local(arg), i, j, N, n);
  }
  result = result * site_embed(twist_matrix(cfg), i, N, n);
  for (int j = n; j > i; --j) {
    const S arg = spectral_difference(cfg.flavor, xi, xs[static_cast<std::size_t>(j - 1)]);
    result = result * pair_embed(local(arg), i, j, N, n);
  }
  return result;
}

void require_site(const char* what, int i, int n) {
  if (i < 1 || i > n) {
    throw Error(ErrorKind::BadSite, std::string(what) + " site " + std::to_string(i) + " outside 1.." + std::to_string(n));
  }
}

template <class S>
bool all_zero(const LocalMatrix<S>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!ScalarTraits<S>::is_zero(m(r, c))) return false;
    }
  }
  return true;
}

// [m]_t = (t^m - t^{-m}) / (t - t^{-1}).
template <class S>
S q_number(int m, const S& t) {
  return (ipow(t, m) - ipow(t, -m)) / (t - S(1) / t);
}

// coth(x0 - x_k) in exponential variables.
template <class S>
S coth_exp(const S& u0, const S& uk) {
  const S a = u0 * u0;
  const S b = uk * uk;
  if (ScalarTraits<S>::is_zero(a - b)) throw Error(ErrorKind::PoleHit, "coth pole at u0 = " + str(u0));
  return (a + b) / (a - b);
}

template <class S>
void record_expansion(const ModelConfig<S>& cfg, CheckBuilder& check, TransferExpansion<S>& out) {
  const auto Hs = hamiltonians(cfg);
  const S scale = residue_scale(cfg);
  const Domain domain = cfg.full_domain();
  out.residues = Hs;
  out.scale = scale;
  out.samples = transfer_samples(cfg);
  if (cfg.flavor == Flavor::Rational) {
    out.constant = transfer_limit(cfg, 1);
    for (const S& x0 : out.samples) {
      ChainOperator<S> rebuilt = out.constant;
      for (int j = 1; j <= cfg.n; ++j) {
        rebuilt = rebuilt + (scale / (x0 - cfg.x[static_cast<std::size_t>(j - 1)])) * Hs[static_cast<std::size_t>(j - 1)];
      }
      check.record(compare(transfer_matrix(cfg, x0), rebuilt), "T(x) at x = " + str(x0));
    }
    return;
  }
  bool first = true;
  for (const S& u0 : out.samples) {
    ChainOperator<S> c = transfer_matrix(cfg, u0);
    for (int k = 1; k <= cfg.n; ++k) {
      c = c - (scale * coth_exp(u0, cfg.x[static_cast<std::size_t>(k - 1)])) * Hs[static_cast<std::size_t>(k - 1)];
    }
    if (first) {
      out.constant = c;
      first = false;
    } else {
      check.record(compare(c, out.constant), "constant term at u = " + str(u0));
    }
  }
  ChainOperator<S> sum = ChainOperator<S>::zero(domain);
  for (const auto& H : Hs) sum = sum + H;
  check.record(compare(out.constant + scale * sum, transfer_limit(cfg, 1)), "T(+inf)");
  check.record(compare(out.constant - scale * sum, transfer_limit(cfg, -1)), "T(-inf)");
}

}  // namespace

template <class S>
void validate(const ModelConfig<S>& cfg) {
  if (cfg.N < 1 || cfg.n < 1) throw Error(ErrorKind::ConfigError, "N and n must be positive");
  if (static_cast<int>(cfg.x.size()) != cfg.n) {
    throw Error(ErrorKind::ConfigError, std::string(cfg.flavor == Flavor::Rational ? "x" : "u") + " must have n = " +
                                            std::to_string(cfg.n) + " entries, got " + std::to_string(cfg.x.size()));
  }
  if (static_cast<int>(cfg.g.size()) != cfg.N) {
    throw Error(ErrorKind::ConfigError,
                "g must have N = " + std::to_string(cfg.N) + " entries, got " + std::to_string(cfg.g.size()));
  }
  for (int a = 1; a <= cfg.N; ++a) {
    if (ScalarTraits<S>::is_zero(cfg.g[static_cast<std::size_t>(a - 1)])) {
      throw Error(ErrorKind::ConfigError, coord("g", a) + " = 0");
    }
  }
  const auto violation = [](const std::string& what) { throw Error(ErrorKind::GenericPositionViolation, what); };
  if (cfg.flavor == Flavor::Rational) {
    if (ScalarTraits<S>::is_zero(cfg.eta)) violation("eta = 0");
    for (int i = 1; i <= cfg.n; ++i) {
      for (int j = i + 1; j <= cfg.n; ++j) {
        const S d = cfg.x[static_cast<std::size_t>(j - 1)] - cfg.x[static_cast<std::size_t>(i - 1)];
        const std::string pair = coord("x", j) + " - " + coord("x", i);
        if (ScalarTraits<S>::is_zero(d)) violation(pair + " = 0");
        if (d == cfg.eta) violation(pair + " = eta");
        if (d == -cfg.eta) violation(pair + " = -eta");
      }
    }
    return;
  }
  if (ScalarTraits<S>::is_zero(cfg.t)) throw Error(ErrorKind::NonInvertibleQ, "t = 0");
  if (ScalarTraits<S>::is_zero(cfg.h)) throw Error(ErrorKind::ConfigError, "h = 0");
  const S t2 = cfg.t * cfg.t;
  if (t2 == S(1)) violation("t^2 = 1");
  for (int i = 1; i <= cfg.n; ++i) {
    if (ScalarTraits<S>::is_zero(cfg.x[static_cast<std::size_t>(i - 1)])) violation(coord("u", i) + " = 0");
  }
  for (int i = 1; i <= cfg.n; ++i) {
    for (int j = i + 1; j <= cfg.n; ++j) {
      const S ui2 = cfg.x[static_cast<std::size_t>(i - 1)] * cfg.x[static_cast<std::size_t>(i - 1)];
      const S uj2 = cfg.x[static_cast<std::size_t>(j - 1)] * cfg.x[static_cast<std::size_t>(j - 1)];
      const std::string ui = coord("u", i) + "^2";
      const std::string uj = coord("u", j) + "^2";
      if (uj2 == ui2) violation(uj + " = " + ui);
      if (uj2 == ui2 * t2) violation(uj + " = " + ui + " t^2");
      if (uj2 * t2 == ui2) violation(uj + " = " + ui + " t^-2");
    }
  }
}

template <class S>
ModelConfig<S> at_zero_hbar(const ModelConfig<S>& cfg) {
  ModelConfig<S> out = cfg;
  out.hbar = S(0);
  out.h = S(1);
  return out;
}

ModelConfig<Complex> to_float(const ModelConfig<Rational>& cfg) {
  ModelConfig<Complex> out;
  out.flavor = cfg.flavor;
  out.N = cfg.N;
  out.n = cfg.n;
  out.eta = to_float(cfg.eta);
  out.hbar = to_float(cfg.hbar);
  out.t = to_float(cfg.t);
  out.h = to_float(cfg.h);
  for (const auto& v : cfg.x) out.x.push_back(to_float(v));
  for (const auto& v : cfg.g) out.g.push_back(to_float(v));
  return out;
}

template <class S>
S site_difference(const ModelConfig<S>& cfg, int a, int b) {
  require_site("difference", a, cfg.n);
  require_site("difference", b, cfg.n);
  return spectral_difference(cfg.flavor, cfg.x[static_cast<std::size_t>(a - 1)], cfg.x[static_cast<std::size_t>(b - 1)]);
}

template <class S>
S shifted(const ModelConfig<S>& cfg, const S& coordinate) {
  return cfg.flavor == Flavor::Rational ? coordinate + cfg.eta * cfg.hbar : coordinate * cfg.h;
}

template <class S>
S residue_scale(const ModelConfig<S>& cfg) {
  if (cfg.flavor == Flavor::Rational) return cfg.eta;
  return sinh_exp(cfg.t);
}

template <class S>
LocalMatrix<S> twist_matrix(const ModelConfig<S>& cfg) {
  LocalMatrix<S> m = LocalMatrix<S>::Constant(cfg.N, cfg.N, S(0));
  for (int a = 0; a < cfg.N; ++a) m(a, a) = cfg.g.at(static_cast<std::size_t>(a));
  return m;
}

template <class S>
ChainOperator<S> qkz_operator(const ModelConfig<S>& cfg, int i, const std::set<int>& shifted_sites) {
  require_site("qKZ operator", i, cfg.n);
  std::vector<S> xs = cfg.x;
  for (int s : shifted_sites) {
    require_site("shifted", s, cfg.n);
    xs[static_cast<std::size_t>(s - 1)] = shifted(cfg, xs[static_cast<std::size_t>(s - 1)]);
  }
  return chain_product(cfg, i, xs, true, false);
}

template <class S>
ChainOperator<S> hamiltonian(const ModelConfig<S>& cfg, int i) {
  require_site("Hamiltonian", i, cfg.n);
  return chain_product(cfg, i, cfg.x, false, true);
}

template <class S>
std::vector<ChainOperator<S>> hamiltonians(const ModelConfig<S>& cfg) {
  std::vector<ChainOperator<S>> out;
  out.reserve(static_cast<std::size_t>(cfg.n));
  for (int i = 1; i <= cfg.n; ++i) out.push_back(hamiltonian(cfg, i));
  return out;
}

template <class S>
S hamiltonian_factor(const ModelConfig<S>& cfg, int i) {
  require_site("Hamiltonian", i, cfg.n);
  S c(1);
  for (int j = 1; j <= cfg.n; ++j) {
    if (j != i) c *= tilde_factor(cfg.flavor, site_difference(cfg, i, j), cfg.deformation());
  }
  return c;
}

template <class S>
ChainOperator<S> weight_operator(const ModelConfig<S>& cfg, int a) {
  if (a < 1 || a > cfg.N) {
    throw Error(ErrorKind::BadColor, "color " + std::to_string(a) + " outside 1.." + std::to_string(cfg.N));
  }
  return ChainOperator<S>::diagonal(cfg.full_domain(), [a](const BasisState& J) {
    return S(static_cast<long>(std::count(J.letters.begin(), J.letters.end(), a)));
  });
}

template <class S>
ChainOperator<S> transfer_matrix(const ModelConfig<S>& cfg, const S& x0) {
  const int N = cfg.N;
  const int n = cfg.n;
  const Domain domain = cfg.full_domain();
  // blocks[k][a][c]: auxiliary matrix element <a| R~_{0k} |c> as an operator on site k.
  std::vector<std::vector<std::vector<LocalMatrix<S>>>> blocks(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const S arg = spectral_difference(cfg.flavor, x0, cfg.x[static_cast<std::size_t>(k - 1)]);
    const LocalMatrix<S> local = r_tilde_local(cfg.flavor, arg, cfg.deformation(), N);
    auto& bk = blocks[static_cast<std::size_t>(k - 1)];
    bk.assign(static_cast<std::size_t>(N), std::vector<LocalMatrix<S>>(static_cast<std::size_t>(N)));
    for (int a = 0; a < N; ++a) {
      for (int c = 0; c < N; ++c) {
        LocalMatrix<S> block(N, N);
        for (int sp = 0; sp < N; ++sp) {
          for (int s = 0; s < N; ++s) block(sp, s) = local(a * N + sp, c * N + s);
        }
        bk[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = block;
      }
    }
  }
  ChainOperator<S> total = ChainOperator<S>::zero(domain);
  for (int c = 0; c < N; ++c) {
    // Column c of R~_{0k} ... R~_{01} g^{(0)}, one chain operator per auxiliary row.
    std::vector<ChainOperator<S>> column(static_cast<std::size_t>(N), ChainOperator<S>::zero(domain));
    for (int b = 0; b < N; ++b) {
      const auto& block = blocks[0][static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
      if (!all_zero(block)) {
        column[static_cast<std::size_t>(b)] = cfg.g[static_cast<std::size_t>(c)] * site_embed(block, 1, N, n);
      }
    }
    for (int k = 2; k <= n; ++k) {
      std::vector<ChainOperator<S>> next(static_cast<std::size_t>(N), ChainOperator<S>::zero(domain));
      for (int b = 0; b < N; ++b) {
        for (int bp = 0; bp < N; ++bp) {
          const auto& block = blocks[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(b)][static_cast<std::size_t>(bp)];
          if (all_zero(block) || column[static_cast<std::size_t>(bp)].nonzeros() == 0) continue;
          next[static_cast<std::size_t>(b)] =
              next[static_cast<std::size_t>(b)] + site_embed(block, k, N, n) * column[static_cast<std::size_t>(bp)];
        }
      }
      column = std::move(next);
    }
    total = total + column[static_cast<std::size_t>(c)];
  }
  return total;
}

template <class S>
std::vector<S> transfer_samples(const ModelConfig<S>& cfg) {
  std::vector<S> out;
  const auto usable = [&](const S& p) {
    if (ScalarTraits<S>::is_zero(p)) return false;
    for (const S& xk : cfg.x) {
      if (cfg.flavor == Flavor::Rational ? p == xk : p * p == xk * xk) return false;
    }
    for (const S& q : out) {
      if (q == p) return false;
    }
    return true;
  };
  for (long k = 0; static_cast<int>(out.size()) < cfg.n + 1; ++k) {
    const Rational r = Rational(5 * k + 13) / Rational(2 * k + 3);
    const S p = ScalarTraits<S>::from_rational(k % 3 == 1 ? -r : r);
    if (usable(p)) out.push_back(p);
  }
  return out;
}

template <class S>
TransferExpansion<S> pole_expansion(const ModelConfig<S>& cfg, double tol) {
  auto check = make_check<S>("pole-expansion", tol);
  TransferExpansion<S> out{ChainOperator<S>::zero(cfg.full_domain()), {}, S(0), {}};
  record_expansion(cfg, check, out);
  if (!check.passed()) throw Error(ErrorKind::IdentityViolation, check.finish().witness);
  return out;
}

template <class S>
ChainOperator<S> sum_rule_target(const ModelConfig<S>& cfg) {
  return ChainOperator<S>::diagonal(cfg.full_domain(), [&cfg](const BasisState& J) {
    const WeightSector M = weight_of(J, cfg.N);
    S value(0);
    for (int a = 1; a <= cfg.N; ++a) {
      const S& g = cfg.g[static_cast<std::size_t>(a - 1)];
      value += cfg.flavor == Flavor::Rational ? g * S(static_cast<long>(M.at(a))) : g * q_number(M.at(a), cfg.t);
    }
    return value;
  });
}

template <class S>
ChainOperator<S> transfer_limit(const ModelConfig<S>& cfg, int sign) {
  return ChainOperator<S>::diagonal(cfg.full_domain(), [&cfg, sign](const BasisState& J) {
    const WeightSector M = weight_of(J, cfg.N);
    S value(0);
    for (int a = 1; a <= cfg.N; ++a) {
      const S& g = cfg.g[static_cast<std::size_t>(a - 1)];
      value += cfg.flavor == Flavor::Rational ? g : g * ipow(cfg.t, sign * M.at(a));
    }
    return value;
  });
}

template <class S>
CheckResult check_pole_expansion(const ModelConfig<S>& cfg, double tol) {
  return guarded("pole-expansion", std::nullopt, [&] {
    auto check = make_check<S>("pole-expansion", tol);
    TransferExpansion<S> out{ChainOperator<S>::zero(cfg.full_domain()), {}, S(0), {}};
    record_expansion(cfg, check, out);
    std::string pts;
    for (const S& s : out.samples) pts += (pts.empty() ? "" : ",") + str(s);
    check.add_param("samples=" + pts);
    return check.finish();
  });
}

template <class S>
CheckResult check_sum_rule(const ModelConfig<S>& cfg, double tol) {
  return guarded("sum-rule", std::nullopt, [&] {
    auto check = make_check<S>("sum-rule", tol);
    ChainOperator<S> sum = ChainOperator<S>::zero(cfg.full_domain());
    for (const auto& H : hamiltonians(cfg)) sum = sum + H;
    check.record(compare(sum, sum_rule_target(cfg)), "sum_i H_i");
    ChainOperator<S> weights = ChainOperator<S>::zero(cfg.full_domain());
    for (int a = 1; a <= cfg.N; ++a) weights = weights + weight_operator(cfg, a);
    check.record(compare_scalar(weights, S(static_cast<long>(cfg.n))), "sum_a M_a");
    return check.finish();
  });
}

template <class S>
CheckResult check_qkz_compatibility(const ModelConfig<S>& cfg, int i, int j, double tol) {
  return guarded("qkz-compat", std::nullopt, [&] {
    auto check = make_check<S>("qkz-compat", tol);
    check.add_param("i=" + std::to_string(i) + " j=" + std::to_string(j));
    if (i == j) throw Error(ErrorKind::ConfigError, "compatibility needs i != j");
    const auto lhs = qkz_operator(cfg, j, {i}) * qkz_operator(cfg, i);
    const auto rhs = qkz_operator(cfg, i, {j}) * qkz_operator(cfg, j);
    check.record(compare(lhs, rhs), "K_" + std::to_string(j) + "(x_" + std::to_string(i) + "+) K_" + std::to_string(i));
    return check.finish();
  });
}

template <class S>
CheckResult check_transfer_commutation(const ModelConfig<S>& cfg, const S& x0, const S& x1, double tol) {
  return guarded("transfer-commute", std::nullopt, [&] {
    auto check = make_check<S>("transfer-commute", tol);
    check.add_param("x=" + str(x0) + " x'=" + str(x1));
    const auto a = transfer_matrix(cfg, x0);
    const auto b = transfer_matrix(cfg, x1);
    check.record(compare(a * b, b * a), "[T(x), T(x')]");
    return check.finish();
  });
}

template <class S>
CheckResult check_hamiltonian_structure(const ModelConfig<S>& cfg, double tol) {
  return guarded("hamiltonian-structure", std::nullopt, [&] {
    auto check = make_check<S>("hamiltonian-structure", tol);
    const auto Hs = hamiltonians(cfg);
    const auto zero = ChainOperator<S>::zero(cfg.full_domain());
    const auto base = at_zero_hbar(cfg);
    for (int i = 1; i <= cfg.n; ++i) {
      const auto& Hi = Hs[static_cast<std::size_t>(i - 1)];
      const std::string hi = "H_" + std::to_string(i);
      check.record(compare(Hi, hamiltonian_factor(cfg, i) * qkz_operator(base, i)), hi + " vs K_" + std::to_string(i) + "^(0)");
      for (int j = i + 1; j <= cfg.n; ++j) {
        check.record(compare(commutator(Hi, Hs[static_cast<std::size_t>(j - 1)]), zero), "[" + hi + ", H_" + std::to_string(j) + "]");
      }
      for (int a = 1; a <= cfg.N; ++a) {
        check.record(compare(commutator(Hi, weight_operator(cfg, a)), zero), "[" + hi + ", M_" + std::to_string(a) + "]");
      }
    }
    return check.finish();
  });
}

#define QKZ_INSTANTIATE(S)                                                                               \
  template void validate(const ModelConfig<S>&);                                                         \
  template ModelConfig<S> at_zero_hbar(const ModelConfig<S>&);                                           \
  template S site_difference(const ModelConfig<S>&, int, int);                                           \
  template S shifted(const ModelConfig<S>&, const S&);                                                   \
  template S residue_scale(const ModelConfig<S>&);                                                       \
  template LocalMatrix<S> twist_matrix(const ModelConfig<S>&);                                           \
  template ChainOperator<S> qkz_operator(const ModelConfig<S>&, int, const std::set<int>&);              \
  template ChainOperator<S> hamiltonian(const ModelConfig<S>&, int);                                     \
  template std::vector<ChainOperator<S>> hamiltonians(const ModelConfig<S>&);                            \
  template S hamiltonian_factor(const ModelConfig<S>&, int);                                             \
  template ChainOperator<S> weight_operator(const ModelConfig<S>&, int);                                 \
  template ChainOperator<S> transfer_matrix(const ModelConfig<S>&, const S&);                            \
  template std::vector<S> transfer_samples(const ModelConfig<S>&);                                       \
  template TransferExpansion<S> pole_expansion(const ModelConfig<S>&, double);                           \
  template ChainOperator<S> sum_rule_target(const ModelConfig<S>&);                                      \
  template ChainOperator<S> transfer_limit(const ModelConfig<S>&, int);                                  \
  template CheckResult check_pole_expansion(const ModelConfig<S>&, double);                              \
  template CheckResult check_sum_rule(const ModelConfig<S>&, double);                                    \
  template CheckResult check_qkz_compatibility(const ModelConfig<S>&, int, int, double);                 \
  template CheckResult check_transfer_commutation(const ModelConfig<S>&, const S&, const S&, double);    \
  template CheckResult check_hamiltonian_structure(const ModelConfig<S>&, double);

QKZ_INSTANTIATE(Rational)
QKZ_INSTANTIATE(Complex)

#undef QKZ_INSTANTIATE

}  // namespace qkz
