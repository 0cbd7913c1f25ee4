#include "qkz/sampling.hpp"

#include <algorithm>

namespace qkz {

long Sampler::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

Rational Sampler::rational(long max_num, long max_den) {
  const long p = integer(-max_num, max_num);
  const long q = integer(1, max_den);
  return normalize(p, q);
}

Rational Sampler::nonzero(long max_num, long max_den) {
  for (;;) {
    Rational r = rational(max_num, max_den);
    if (!r.is_zero()) return r;
  }
}

Rational Sampler::positive(long max_num, long max_den) {
  return normalize(integer(1, max_num), integer(1, max_den));
}

double Sampler::real(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

namespace {

// Poles and zeros of R, R~ at a spectral argument.
bool regular_argument(Flavor flavor, const Rational& arg, const Rational& param) {
  if (flavor == Flavor::Rational) return !arg.is_zero() && arg != param && arg != -param;
  if (arg.is_zero()) return false;
  const Rational a2 = arg * arg;
  const Rational t2 = param * param;
  return a2 != Rational(1) && a2 * t2 != Rational(1) && a2 != t2;
}

}  // namespace

Rational random_deformation(Flavor flavor, Sampler& sampler) {
  for (;;) {
    const Rational p = flavor == Flavor::Rational ? sampler.nonzero(5, 4) : sampler.positive(7, 4);
    if (flavor == Flavor::Trigonometric && p == Rational(1)) continue;
    return p;
  }
}

bool shift_generic(const ModelConfig<Rational>& cfg) {
  const Rational& param = cfg.deformation();
  for (int i = 1; i <= cfg.n; ++i) {
    for (int j = 1; j <= cfg.n; ++j) {
      if (i == j) continue;
      const Rational d = site_difference(cfg, i, j);
      for (int m = -1; m <= 1; ++m) {
        const Rational arg =
            cfg.flavor == Flavor::Rational ? d + Rational(m) * cfg.eta * cfg.hbar : d * pow(cfg.h, m);
        if (!regular_argument(cfg.flavor, arg, param)) return false;
      }
    }
  }
  return true;
}

ModelConfig<Rational> random_model(Flavor flavor, int N, int n, Sampler& sampler) {
  for (;;) {
    ModelConfig<Rational> cfg;
    cfg.flavor = flavor;
    cfg.N = N;
    cfg.n = n;
    if (flavor == Flavor::Rational) {
      cfg.eta = random_deformation(flavor, sampler);
      cfg.hbar = sampler.nonzero(5, 3);
      for (int i = 0; i < n; ++i) cfg.x.push_back(sampler.rational(9, 7));
    } else {
      cfg.t = random_deformation(flavor, sampler);
      do {
        cfg.h = sampler.positive(7, 4);
      } while (cfg.h == Rational(1));
      for (int i = 0; i < n; ++i) cfg.x.push_back(sampler.positive(9, 5));
    }
    for (int a = 0; a < N; ++a) cfg.g.push_back(sampler.nonzero(7, 3));
    try {
      validate(cfg);
    } catch (const Error&) {
      continue;
    }
    if (shift_generic(cfg)) return cfg;
  }
}

std::pair<Rational, Rational> random_spectral_pair(Flavor flavor, const Rational& param, Sampler& sampler) {
  for (;;) {
    const Rational x = flavor == Flavor::Rational ? sampler.nonzero(9, 5) : sampler.positive(9, 5);
    const Rational y = flavor == Flavor::Rational ? sampler.nonzero(9, 5) : sampler.positive(9, 5);
    const Rational xy = flavor == Flavor::Rational ? x - y : x / y;
    if (regular_argument(flavor, x, param) && regular_argument(flavor, y, param) && regular_argument(flavor, xy, param)) {
      return {x, y};
    }
  }
}

}  // namespace qkz
