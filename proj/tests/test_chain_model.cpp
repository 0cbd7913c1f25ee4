#include <doctest.h>

#include "oracles.hpp"
#include "qkz/chain_model.hpp"
#include "qkz/sampling.hpp"

using namespace qkz;
using Op = ChainOperator<Rational>;
using Cfg = ModelConfig<Rational>;

namespace {

Rational q_(long p, long q) { return normalize(p, q); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

Cfg rational_cfg(int N, std::vector<Rational> x, Rational eta, Rational hbar, std::vector<Rational> g) {
  Cfg c;
  c.flavor = Flavor::Rational;
  c.N = N;
  c.n = static_cast<int>(x.size());
  c.eta = eta;
  c.hbar = hbar;
  c.x = std::move(x);
  c.g = std::move(g);
  validate(c);
  return c;
}

Cfg trig_cfg(int N, std::vector<Rational> u, Rational t, Rational h, std::vector<Rational> g) {
  Cfg c;
  c.flavor = Flavor::Trigonometric;
  c.N = N;
  c.n = static_cast<int>(u.size());
  c.t = t;
  c.h = h;
  c.x = std::move(u);
  c.g = std::move(g);
  validate(c);
  return c;
}

Cfg reference_cfg() { return rational_cfg(2, {0, q_(2, 5), q_(9, 7)}, q_(1, 2), q_(1, 3), {2, 3}); }

// Transfer matrix built on an explicit auxiliary site (site 1 of n + 1 sites)
// and traced out entry by entry.
Op transfer_oracle(const Cfg& cfg, const Rational& x0) {
  const int N = cfg.N, n = cfg.n;
  Op big = Op::identity(Domain::full(N, n + 1));
  for (int k = n; k >= 1; --k) {
    const Rational arg = spectral_difference(cfg.flavor, x0, cfg.x[static_cast<std::size_t>(k - 1)]);
    big = big * pair_embed(r_tilde_local(cfg.flavor, arg, cfg.deformation(), N), 1, k + 1, N, n + 1);
  }
  big = big * site_embed(twist_matrix(cfg), 1, N, n + 1);
  const Domain d = cfg.full_domain();
  const auto words = oracle::all_words(N, n);
  Op::SparseMatrix m(static_cast<Eigen::Index>(d.dim()), static_cast<Eigen::Index>(d.dim()));
  std::vector<Eigen::Triplet<Rational, std::ptrdiff_t>> t;
  for (const auto& r : words) {
    for (const auto& c : words) {
      Rational sum(0);
      for (int a = 1; a <= N; ++a) {
        auto ra = r, ca = c;
        ra.insert(ra.begin(), a);
        ca.insert(ca.begin(), a);
        sum += big.coeff(BasisState{ra}, BasisState{ca});
      }
      if (!sum.is_zero()) {
        t.emplace_back(static_cast<std::ptrdiff_t>(oracle::word_index(r, N)),
                       static_cast<std::ptrdiff_t>(oracle::word_index(c, N)), sum);
      }
    }
  }
  m.setFromTriplets(t.begin(), t.end());
  return Op(d, m);
}

}  // namespace

TEST_SUITE("chain_model") {
  TEST_CASE("validation names the colliding pair") {
    Cfg c = reference_cfg();
    c.x[1] = c.x[0] + c.eta;
    try {
      validate(c);
      FAIL("accepted a collision");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GenericPositionViolation);
      CHECK(std::string(e.what()).find("x_2 - x_1 = eta") != std::string::npos);
    }
    Cfg d = reference_cfg();
    d.g[0] = 0;
    CHECK_THROWS_AS(validate(d), Error);
    Cfg tr = trig_cfg(2, {1, q_(3, 2), q_(7, 3)}, 2, q_(5, 4), {2, 3});
    tr.x[1] = Rational(2);  // u_2^2 = u_1^2 t^2
    CHECK(kind_of([&] { validate(tr); }) == ErrorKind::GenericPositionViolation);
  }

  TEST_CASE("single site") {
    const Cfg c = rational_cfg(2, {q_(1, 4)}, q_(1, 2), q_(1, 3), {2, 5});
    const Op g = site_embed(twist_matrix(c), 1, 2, 1);
    CHECK(compare(qkz_operator(c, 1), g).exact_match);
    CHECK(compare(hamiltonian(c, 1), g).exact_match);
    // By hand: tr_0 of (I + eta/(x - x1) P_01) (g (x) I) = tr(g) I + eta g / (x - x1).
    const Rational x = 3;
    const Op hand = Rational(7) * Op::identity(c.full_domain()) + (c.eta / (x - c.x[0])) * g;
    CHECK(compare(transfer_matrix(c, x), hand).exact_match);
    const auto exp = pole_expansion(c);
    REQUIRE(exp.residues.size() == 1);
    CHECK(compare(exp.scale * exp.residues[0], c.eta * g).exact_match);
    CHECK(compare(exp.constant, Rational(7) * Op::identity(c.full_domain())).exact_match);
    CHECK(check_sum_rule(c).passed);
  }

  TEST_CASE("transfer matrix matches the auxiliary-site oracle") {
    Sampler s(31);
    for (Flavor fl : {Flavor::Rational, Flavor::Trigonometric}) {
      for (int N = 2; N <= 3; ++N) {
        for (int n = 1; n <= (N == 2 ? 3 : 2); ++n) {
          const Cfg c = random_model(fl, N, n, s);
          for (const Rational& x0 : transfer_samples(c)) {
            CHECK(compare(transfer_matrix(c, x0), transfer_oracle(c, x0)).exact_match);
          }
        }
      }
    }
  }

  TEST_CASE("transfer matrices commute") {
    const Cfg c = reference_cfg();
    CHECK(check_transfer_commutation(c, Rational(3), q_(-7, 2)).passed);
    Sampler s(12);
    for (Flavor fl : {Flavor::Rational, Flavor::Trigonometric}) {
      for (int N = 2; N <= 3; ++N) {
        for (int n = 2; n <= 4; ++n) {
          if (N == 3 && n == 4) continue;
          const Cfg r = random_model(fl, N, n, s);
          const auto pts = transfer_samples(r);
          for (std::size_t k = 0; k + 1 < pts.size() && k < 5; ++k) {
            const auto res = check_transfer_commutation(r, pts[k], pts[k + 1]);
            CHECK_MESSAGE(res.passed, res.witness);
          }
        }
      }
    }
  }

  TEST_CASE("transfer matrix tends to tr(g) I") {
    const Cfg c = reference_cfg();
    const Op far = transfer_matrix(c, Rational(1000000000)) - Rational(5) * Op::identity(c.full_domain());
    far.for_each([](std::size_t, std::size_t, const Rational& v) { CHECK(std::abs(v.to_double()) < 1e-8); });
  }

  TEST_CASE("hamiltonian relation and structure") {
    const Cfg c = reference_cfg();
    for (int i = 1; i <= 3; ++i) {
      Rational factor(1);
      for (int j = 1; j <= 3; ++j) {
        if (j == i) continue;
        const Rational d = c.x[static_cast<std::size_t>(i - 1)] - c.x[static_cast<std::size_t>(j - 1)];
        factor *= (d + c.eta) / d;
      }
      CHECK(compare(hamiltonian(c, i), factor * qkz_operator(at_zero_hbar(c), i)).exact_match);
    }
    const auto H = hamiltonians(c);
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t j = 0; j < H.size(); ++j) CHECK(commutator(H[i], H[j]).nonzeros() == 0);
    CHECK(check_hamiltonian_structure(c).passed);
    const Cfg tr = trig_cfg(2, {1, q_(3, 2), q_(7, 3)}, 2, q_(5, 4), {2, 3});
    CHECK(check_hamiltonian_structure(tr).passed);
  }

  TEST_CASE("K_i respects weight sectors and the covector") {
    const Cfg c = reference_cfg();
    const auto w = omega<Rational>(c.full_domain());
    for (int i = 1; i <= 3; ++i) {
      const Op K = qkz_operator(c, i);
      for (const auto& M : all_sectors(2, 3)) CHECK_NOTHROW(restrict(K, M));
      CHECK(compare(apply_left(w, K), apply_left(w, qkz_operator(at_zero_hbar(c), i))).exact_match);
    }
  }

  TEST_CASE("weight operators") {
    const Cfg c = reference_cfg();
    Op sum = Op::zero(c.full_domain());
    for (int a = 1; a <= 2; ++a) sum = sum + weight_operator(c, a);
    CHECK(compare(sum, Rational(3) * Op::identity(c.full_domain())).exact_match);
    CHECK(weight_operator(c, 1).coeff(BasisState{{1, 1, 2}}, BasisState{{1, 1, 2}}) == Rational(2));
    CHECK(kind_of([&] { weight_operator(c, 3); }) == ErrorKind::BadColor);
    for (const auto& H : hamiltonians(c)) CHECK(commutator(weight_operator(c, 1), H).nonzeros() == 0);
    for (const auto& M : all_sectors(2, 3)) {
      CHECK(compare_scalar(restrict(weight_operator(c, 1), M), Rational(M.at(1))).exact_match);
    }
  }

  TEST_CASE("pole expansion") {
    CHECK(check_pole_expansion(rational_cfg(2, {0, q_(2, 5)}, q_(1, 2), q_(1, 3), {2, 3})).passed);
    const Cfg tr = trig_cfg(2, {1, q_(3, 2)}, 2, q_(5, 4), {2, 3});
    const auto e = pole_expansion(tr);
    Op sum = Op::zero(tr.full_domain());
    for (const auto& H : e.residues) sum = sum + H;
    // sum_a g_a t^{+-M_a}, written out on each basis state.
    for (int sign : {1, -1}) {
      const Op lim = e.constant + Rational(sign) * e.scale * sum;
      const Op expect = Op::diagonal(tr.full_domain(), [&](const BasisState& J) {
        Rational v(0);
        for (int a = 1; a <= 2; ++a) {
          int m = 0;
          for (int l : J.letters) m += l == a;
          v += tr.g[static_cast<std::size_t>(a - 1)] * pow(tr.t, sign * m);
        }
        return v;
      });
      CHECK(compare(lim, expect).exact_match);
    }
    CHECK(e.scale == (Rational(2) - q_(1, 2)) / Rational(2));
  }

  TEST_CASE("sum rules") {
    CHECK(check_sum_rule(reference_cfg()).passed);
    const Cfg tr = trig_cfg(2, {1, q_(3, 2), q_(7, 3)}, 2, q_(5, 4), {2, 3});
    CHECK(check_sum_rule(tr).passed);
    // On the one-state sector (n, 0) the sum is g_1 [n]_t.
    const WeightSector top{{3, 0}};
    Op sum = Op::zero(tr.full_domain());
    for (const auto& H : hamiltonians(tr)) sum = sum + H;
    const Rational t = tr.t;
    const Rational qn = (pow(t, 3) - pow(t, -3)) / (t - t.inverse());
    CHECK(compare_scalar(restrict(sum, top), Rational(2) * qn).exact_match);
    // Wrong twist in the target breaks the rule.
    Cfg wrong = reference_cfg();
    const Op target = sum_rule_target(wrong);
    wrong.g[0] = wrong.g[0] + Rational(1);
    Op s2 = Op::zero(wrong.full_domain());
    for (const auto& H : hamiltonians(reference_cfg())) s2 = s2 + H;
    CHECK(compare(s2, target).exact_match);
    CHECK_FALSE(compare(s2, sum_rule_target(wrong)).exact_match);
  }

  TEST_CASE("qKZ compatibility examples") {
    const Cfg a = rational_cfg(2, {0, q_(2, 5)}, q_(1, 2), q_(1, 3), {2, 3});
    CHECK(check_qkz_compatibility(a, 1, 2).passed);
    CHECK(check_qkz_compatibility(at_zero_hbar(a), 1, 2).passed);
    const Cfg tr = trig_cfg(2, {1, q_(3, 2), q_(7, 3)}, 2, q_(5, 4), {2, 3});
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) CHECK(check_qkz_compatibility(tr, i, j).passed);
  }

  TEST_CASE("qKZ compatibility fails without the shift") {
    const Cfg a = rational_cfg(2, {0, q_(2, 5), q_(9, 7)}, q_(1, 2), q_(1, 3), {2, 3});
    const Op lhs = qkz_operator(a, 2) * qkz_operator(a, 1);
    const Op rhs = qkz_operator(a, 1) * qkz_operator(a, 2);
    CHECK_FALSE(compare(lhs, rhs).exact_match);
  }

  TEST_CASE("random models satisfy all structural identities") {
    Sampler s(2024);
    for (Flavor fl : {Flavor::Rational, Flavor::Trigonometric}) {
      for (int N = 2; N <= 3; ++N) {
        for (int n = 1; n <= 3; ++n) {
          const Cfg c = random_model(fl, N, n, s);
          CHECK(check_pole_expansion(c).passed);
          CHECK(check_sum_rule(c).passed);
          CHECK(check_hamiltonian_structure(c).passed);
          for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) CHECK(check_qkz_compatibility(c, i, j).passed);
          for (const auto& M : all_sectors(N, n)) {
            for (const auto& H : hamiltonians(c)) CHECK_NOTHROW(restrict(H, M));
            CHECK_NOTHROW(restrict(transfer_matrix(c, transfer_samples(c).front()), M));
          }
        }
      }
    }
  }

  TEST_CASE("float domain tracks the exact operators") {
    const Cfg c = reference_cfg();
    const auto f = to_float(c);
    const auto He = hamiltonian(c, 2);
    const auto Hf = hamiltonian(f, 2);
    He.for_each([&](std::size_t r, std::size_t col, const Rational& v) {
      CHECK(approx_eq(to_float(v), Hf.coeff(r, col), 1e-13));
    });
    CHECK(check_pole_expansion(f).passed);
  }
}
