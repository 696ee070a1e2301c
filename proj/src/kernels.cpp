#include "monoord/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "monoord/likelihood.hpp"

namespace monoord::kernels {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) return v < 0 ? kLogZero : v;
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

namespace {

void check_sizes(const Configuration& config, std::span<const double> x,
                 std::span<const double> out) {
  const std::size_t p = config.dims();
  if (x.size() % p != 0 || out.size() != (x.size() / p) * config.levels()) {
    throw std::invalid_argument("envelope: buffer size mismatch");
  }
}

}  // namespace

void envelope_serial(const Configuration& config, std::span<const double> x,
                     std::span<double> out) {
  check_sizes(config, x, out);
  const int p = config.dims();
  const int K = config.levels();
  const std::size_t N = x.size() / p;
  std::vector<PointId> all{kOriginId};
  all.insert(all.end(), config.points().begin(), config.points().end());
  for (std::size_t n = 0; n < N; ++n) {
    const auto xn = x.subspan(n * p, p);
    for (int k = 0; k < K; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      for (PointId id : all) {
        if (dominates(config.location(id), xn)) best = std::max(best, config.marks(id)[k]);
      }
      out[n * K + k] = best;
    }
  }
}

void envelope_parallel(const Configuration& config, std::span<const double> x,
                       std::span<double> out) {
  check_sizes(config, x, out);
  const int p = config.dims();
  const int K = config.levels();
  const auto N = static_cast<long>(x.size() / p);
#pragma omp parallel for schedule(static)
  for (long n = 0; n < N; ++n) {
    config.evaluate_levels(x.subspan(std::size_t(n) * p, p),
                           out.subspan(std::size_t(n) * K, K));
  }
}

void log_terms_serial(const Dataset& data, const Configuration& config,
                      const ParametricState& theta, const LinkSpec& link,
                      std::span<double> terms) {
  const std::size_t N = data.size();
  if (terms.size() != N) throw std::invalid_argument("log_terms: size mismatch");
  std::vector<double> levels(N * config.levels());
  envelope_serial(config, data.x, levels);
  const int K = config.levels();
  for (std::size_t n = 0; n < N; ++n) {
    const int c = data.clusters > 0 ? data.cluster[n] : 0;
    const double off = linear_offset(data.z_row(n), c, theta);
    terms[n] = observation_log_prob(data.y[n], std::span<const double>(levels).subspan(n * K, K),
                                    off, link);
  }
}

void log_terms_parallel(const Dataset& data, const Configuration& config,
                        const ParametricState& theta, const LinkSpec& link,
                        std::span<double> terms) {
  const auto N = static_cast<long>(data.size());
  if (terms.size() != data.size()) throw std::invalid_argument("log_terms: size mismatch");
  const int K = config.levels();
#pragma omp parallel
  {
    std::vector<double> levels(K);
#pragma omp for schedule(static)
    for (long n = 0; n < N; ++n) {
      config.evaluate_levels(data.x_row(n), levels);
      const int c = data.clusters > 0 ? data.cluster[n] : 0;
      const double off = linear_offset(data.z_row(n), c, theta);
      terms[n] = observation_log_prob(data.y[n], levels, off, link);
    }
  }
}

double log_likelihood_serial(const Dataset& data, const Configuration& config,
                             const ParametricState& theta, const LinkSpec& link) {
  std::vector<double> terms(data.size());
  log_terms_serial(data, config, theta, link, terms);
  return compensated_sum(terms);
}

double log_likelihood_parallel(const Dataset& data, const Configuration& config,
                               const ParametricState& theta, const LinkSpec& link) {
  std::vector<double> terms(data.size());
  log_terms_parallel(data, config, theta, link, terms);
  return compensated_sum(terms);
}

}  // namespace monoord::kernels
