#include <doctest.h>

#include <cmath>

#include "qkz/rmatrix.hpp"
#include "qkz/sampling.hpp"

using namespace qkz;
using Op = ChainOperator<Rational>;

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

Op identity(int N, int n) { return Op::identity(Domain::full(N, n)); }

// Entries of the trigonometric R-matrix computed from sinh and exp of the
// logarithmic variables, indexed as in the local convention.
double trig_entry_float(double x, double eta, int N, int row, int col) {
  const int a = row / N, b = row % N, c = col / N, d = col % N;
  const double den = std::sinh(x + eta);
  if (a == b && c == d && a == c) return 1.0;
  if (row == col) return std::sinh(x) / den;
  if (a == d && b == c) {
    // e_ab (x) e_ba maps (b, a) to (a, b).
    return a < b ? std::exp(x) * std::sinh(eta) / den : std::exp(-x) * std::sinh(eta) / den;
  }
  return 0.0;
}

}  // namespace

TEST_SUITE("rmatrix") {
  TEST_CASE("rational R examples") {
    const Rational eta = q_(1, 2);
    CHECK(compare(r_rational<Rational>(1, 2, Rational(0), eta, 2, 2), permutation<Rational>(1, 2, 2, 2)).exact_match);
    const auto half = q_(1, 2) * (identity(2, 2) + permutation<Rational>(1, 2, 2, 2));
    CHECK(compare(r_rational<Rational>(1, 2, eta, eta, 2, 2), half).exact_match);
    const Rational x = q_(1, 3);
    const auto u = r_rational<Rational>(1, 2, x, eta, 2, 2) * r_rational<Rational>(2, 1, -x, eta, 2, 2);
    CHECK(compare(u, identity(2, 2)).exact_match);
    CHECK(kind_of([&] { r_rational<Rational>(1, 2, -eta, eta, 2, 2); }) == ErrorKind::PoleHit);
  }

  TEST_CASE("rational R matches its definition on the full space") {
    const Rational eta = q_(2, 5), x = q_(-7, 3);
    for (int N = 2; N <= 3; ++N) {
      const auto P = permutation<Rational>(1, 3, N, 3);
      const auto expect = ((x + eta).inverse()) * (x * identity(N, 3) + eta * P);
      CHECK(compare(r_rational<Rational>(1, 3, x, eta, N, 3), expect).exact_match);
    }
  }

  TEST_CASE("rational R tilde") {
    const Rational x = q_(2, 7), eta = q_(1, 3);
    const auto Rt = r_rational_tilde<Rational>(1, 2, x, eta, 2, 2);
    CHECK(compare(Rt, ((x + eta) / x) * r_rational<Rational>(1, 2, x, eta, 2, 2)).exact_match);
    CHECK(compare(Rt, identity(2, 2) + (eta / x) * permutation<Rational>(1, 2, 2, 2)).exact_match);
    // R~(x) - I = (eta / x) P, so the deviation shrinks exactly like 1/x.
    const auto d3 = r_rational_tilde<Rational>(1, 2, Rational(1000), eta, 2, 2) - identity(2, 2);
    const auto d6 = r_rational_tilde<Rational>(1, 2, Rational(1000000), eta, 2, 2) - identity(2, 2);
    CHECK(compare(Rational(1000) * d3, Rational(1000000) * d6).exact_match);
    // R~_12(eta) R~_21(-eta) = (I + P)(I - P) = 0.
    const auto z = r_rational_tilde<Rational>(1, 2, eta, eta, 2, 2) * r_rational_tilde<Rational>(2, 1, -eta, eta, 2, 2);
    CHECK(z.nonzeros() == 0);
    CHECK(kind_of([&] { r_rational_tilde<Rational>(1, 2, Rational(0), eta, 2, 2); }) == ErrorKind::PoleHit);
  }

  TEST_CASE("trigonometric R examples") {
    const Rational t = 2;
    CHECK(compare(r_trig<Rational>(1, 2, Rational(1), t, 2, 2), permutation<Rational>(1, 2, 2, 2)).exact_match);
    for (int N = 2; N <= 3; ++N) {
      CHECK(trig_r_local(q_(3, 2), t, N) == trig_r_table_local(q_(3, 2), t, N));
    }
    const Rational u = q_(5, 4), t3 = 3;
    const auto prod = r_trig<Rational>(1, 2, u, t3, 2, 2) * r_trig<Rational>(2, 1, u.inverse(), t3, 2, 2);
    CHECK(compare(prod, identity(2, 2)).exact_match);
    // u^2 t^2 = 1.
    CHECK(kind_of([] { r_trig<Rational>(1, 2, q_(1, 2), Rational(2), 2, 2); }) == ErrorKind::PoleHit);
  }

  TEST_CASE("trigonometric R agrees with sinh/exp evaluation") {
    Sampler s(17);
    for (int k = 0; k < 10; ++k) {
      const Rational u = s.positive(9, 4);
      const Rational t = random_deformation(Flavor::Trigonometric, s);
      if (u * u * t * t == Rational(1)) continue;
      const double x = std::log(u.to_double()), eta = std::log(t.to_double());
      for (int N = 2; N <= 3; ++N) {
        const auto R = trig_r_local(u, t, N);
        for (int r = 0; r < N * N; ++r) {
          for (int c = 0; c < N * N; ++c) {
            CHECK(R(r, c).to_double() == doctest::Approx(trig_entry_float(x, eta, N, r, c)).epsilon(1e-12));
          }
        }
      }
    }
  }

  TEST_CASE("trigonometric R tilde") {
    const Rational u = q_(3, 2), t = 2;
    const Rational c = tilde_factor(Flavor::Trigonometric, u, t);
    CHECK(c == (u * u * t * t - Rational(1)) / (t * (u * u - Rational(1))));
    CHECK(compare(r_trig_tilde<Rational>(1, 2, u, t, 2, 2), c * r_trig<Rational>(1, 2, u, t, 2, 2)).exact_match);
    // At q = 1 the q-permutation is the plain one.
    const auto Rt = r_trig_tilde<Rational>(1, 2, u, Rational(1), 2, 2);
    const Rational c1 = tilde_factor(Flavor::Trigonometric, u, Rational(1));
    CHECK(c1 == Rational(1));
    CHECK(compare(q_permutation<Rational>(1, 2, Rational(1), 2, 2), permutation<Rational>(1, 2, 2, 2)).exact_match);
    CHECK(compare(Rt, identity(2, 2) - permutation<Rational>(1, 2, 2, 2) + c1 * permutation<Rational>(1, 2, 2, 2)).exact_match);
    CHECK(kind_of([&] { r_trig_tilde<Rational>(1, 2, Rational(-1), t, 2, 2); }) == ErrorKind::PoleHit);
  }

  TEST_CASE("Yang-Baxter examples") {
    auto r = check_yang_baxter(Flavor::Rational, q_(2, 3), q_(1, 5), q_(1, 2), 2);
    CHECK(r.passed);
    CHECK(r.residual == 0.0);
    CHECK(check_yang_baxter(Flavor::Rational, q_(2, 3), Rational(0), q_(1, 2), 2).passed);
    CHECK(check_yang_baxter(Flavor::Trigonometric, Rational(2), q_(3, 2), q_(5, 4), 3).passed);
    CHECK(check_yang_baxter(Flavor::Trigonometric, Rational(2), q_(5, 3), q_(3, 2), 2).passed);
  }

  TEST_CASE("Yang-Baxter fails with the wrong middle argument") {
    const Rational x = q_(2, 3), y = q_(1, 5), eta = q_(1, 2);
    const auto R = [&](int i, int j, const Rational& s) { return r_rational<Rational>(i, j, s, eta, 2, 3); };
    const auto lhs = R(1, 2, x + y) * R(1, 3, x) * R(2, 3, y);
    const auto rhs = R(2, 3, y) * R(1, 3, x) * R(1, 2, x + y);
    CHECK_FALSE(compare(lhs, rhs).exact_match);
  }

  TEST_CASE("random unitarity, twist commutation and proportionality") {
    Sampler s(99);
    for (Flavor fl : {Flavor::Rational, Flavor::Trigonometric}) {
      for (int N = 2; N <= 3; ++N) {
        for (int k = 0; k < 20; ++k) {
          const Rational param = random_deformation(fl, s);
          const auto [x, y] = random_spectral_pair(fl, param, s);
          (void)y;
          CHECK(check_unitarity(fl, x, param, N).passed);
          std::vector<Rational> g;
          for (int a = 0; a < N; ++a) g.push_back(s.nonzero(7, 3));
          CHECK(check_twist_commutation(fl, x, param, g).passed);
          CHECK(r_tilde_local(fl, x, param, N) == tilde_factor(fl, x, param) * r_local(fl, x, param, N));
        }
      }
    }
  }

  TEST_CASE("random Yang-Baxter triples") {
    Sampler s(7);
    for (Flavor fl : {Flavor::Rational, Flavor::Trigonometric}) {
      for (int k = 0; k < 10; ++k) {
        const Rational param = random_deformation(fl, s);
        const auto [x, y] = random_spectral_pair(fl, param, s);
        const int N = 2 + k % 2;
        const auto r = check_yang_baxter(fl, x, y, param, N);
        CHECK_MESSAGE(r.passed, r.witness);
      }
    }
  }

  TEST_CASE("float domain agrees with exact construction") {
    const Rational u = q_(7, 5), t = q_(3, 2);
    const auto exact = trig_r_local(u, t, 3);
    const auto fl = trig_r_local(to_float(u), to_float(t), 3);
    for (int r = 0; r < 9; ++r)
      for (int c = 0; c < 9; ++c) CHECK(approx_eq(to_float(exact(r, c)), fl(r, c), 1e-14));
  }

  TEST_CASE("parse_flavor") {
    CHECK(parse_flavor("rational") == Flavor::Rational);
    CHECK(parse_flavor("xxz") == Flavor::Trigonometric);
    CHECK(parse_flavor("trigonometric") == Flavor::Trigonometric);
    CHECK(kind_of([] { parse_flavor("elliptic"); }) == ErrorKind::ParseError);
  }
}
