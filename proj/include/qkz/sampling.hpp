#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qkz/chain_model.hpp"

namespace qkz {

/// Seeded source of small rationals. Uses the raw mt19937_64 stream (whose
/// output is fixed by the standard) so draws are identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Integer uniform in [lo, hi].
  long integer(long lo, long hi);
  /// p / q with |p| <= max_num, 1 <= q <= max_den.
  Rational rational(long max_num, long max_den);
  Rational nonzero(long max_num, long max_den);
  /// p / q > 0, p <= max_num.
  Rational positive(long max_num, long max_den);
  /// Real number uniform in [lo, hi).
  double real(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// Random exact model in generic position. Also keeps every argument
/// x_i - x_j + m eta hbar (m in {-1, 0, 1}) away from the R-matrix poles, so
/// qKZ operators with shifted sites are always defined.
ModelConfig<Rational> random_model(Flavor flavor, int N, int n, Sampler& sampler);

/// True when cfg satisfies the shifted-argument condition of random_model.
bool shift_generic(const ModelConfig<Rational>& cfg);

/// Spectral pair (x, y) for which R(x), R(y), R(x - y) and their tilde
/// versions are all defined.
std::pair<Rational, Rational> random_spectral_pair(Flavor flavor, const Rational& param, Sampler& sampler);

/// eta (rational) or t (trigonometric) drawn away from the degenerate values.
Rational random_deformation(Flavor flavor, Sampler& sampler);

}  // namespace qkz
