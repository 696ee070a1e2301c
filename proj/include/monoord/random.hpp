#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace monoord {

/// Seeded random stream. One per chain; never shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  double normal() { return normal_(engine_); }
  /// Gamma with shape/rate parameterization.
  double gamma(double shape, double rate);
  /// Beta(shape, 1) by inversion.
  double beta_first(double shape);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Independent seed for stream `stream` derived from `base` (splitmix64).
/// Chain c of a multi-chain run uses stream_seed(seed, c).
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace monoord
