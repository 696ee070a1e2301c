#include "monoord/random.hpp"

#include <cmath>
#include <stdexcept>

namespace monoord {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index: empty range");
  auto i = static_cast<std::size_t>(uniform() * double(n));
  return i < n ? i : n - 1;
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0) || !(rate > 0)) throw std::invalid_argument("Rng::gamma: bad parameters");
  std::gamma_distribution<double> g(shape, 1.0 / rate);
  return g(engine_);
}

double Rng::beta_first(double shape) {
  if (!(shape > 0)) throw std::invalid_argument("Rng::beta_first: bad shape");
  if (shape == 1.0) return uniform();
  return std::pow(uniform(), 1.0 / shape);
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace monoord
