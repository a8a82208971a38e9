#pragma once

#include <cstdint>
#include <random>

#include "nearshift/series.hpp"

namespace nearshift {

/// Seeded source for every randomized trial.
///
/// State update is the 64-bit LCG x' = 6364136223846793005 x + 1442695040888963407
/// (mod 2^64), starting from x = seed. Each draw advances once and maps the top
/// 53 bits of the new state to [0, 1). Other implementations reproduce trials
/// bit-for-bit from the same seed.
class SeededRng {
 public:
  using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                 1442695040888963407ULL, 0ULL>;

  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  /// Real and imaginary parts drawn in that order, each uniform on [-1, 1).
  Complex complex() {
    const double re = symmetric();
    const double im = symmetric();
    return {re, im};
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

  CVector complex_vector(Eigen::Index n);
  /// Degree-`degree` polynomial with nonzero coefficients up to `support`.
  TruncatedSeries series(int support, int degree);

 private:
  Engine engine_;
};

}  // namespace nearshift
