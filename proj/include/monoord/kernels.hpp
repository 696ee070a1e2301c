#pragma once

// Data-parallel evaluation kernels. Each has a serial reference version
// that shares no evaluation code with the parallel one; tests check that
// both agree and the benchmark compares them.

#include <span>

#include "monoord/model.hpp"
#include "monoord/mpp.hpp"

namespace monoord::kernels {

/// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> values);

/// out[n*K + k] = lambda_k(x_n) for the N rows of `x` (row-major, p columns).
void envelope_serial(const Configuration& config, std::span<const double> x,
                     std::span<double> out);
void envelope_parallel(const Configuration& config, std::span<const double> x,
                       std::span<double> out);

/// Per-observation log-probability terms.
void log_terms_serial(const Dataset& data, const Configuration& config,
                      const ParametricState& theta, const LinkSpec& link,
                      std::span<double> terms);
void log_terms_parallel(const Dataset& data, const Configuration& config,
                        const ParametricState& theta, const LinkSpec& link,
                        std::span<double> terms);

double log_likelihood_serial(const Dataset& data, const Configuration& config,
                             const ParametricState& theta, const LinkSpec& link);
double log_likelihood_parallel(const Dataset& data, const Configuration& config,
                               const ParametricState& theta, const LinkSpec& link);

}  // namespace monoord::kernels
