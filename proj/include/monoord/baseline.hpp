#pragma once

// Bayesian proportional-odds model, used as a parametric reference fit:
//   logit S(k | w) = alpha_k + beta' w,  k = 2..K,  alpha_2 > ... > alpha_K,
// where w stacks the monotone and the linear covariates of each observation.

#include <cstdint>
#include <span>
#include <vector>

#include "monoord/model.hpp"

namespace monoord {

struct BaselineState {
  std::vector<double> alpha;  // K-1 intercepts for categories 2..K
  std::vector<double> beta;   // p + q slopes

  bool ordered() const;
};

struct BaselineConfig {
  std::uint64_t iterations = 50000;
  std::uint64_t burn_in = 10000;
  std::uint64_t thin = 20;
  std::uint64_t seed = 1;
  double scale = 0.05;
  bool adapt = true;
  double target_acceptance = 0.44;
  /// A parameter beyond this magnitude stops the chain and marks it diverged.
  double divergence_bound = 50.0;
};

struct BaselineResult {
  std::vector<BaselineState> samples;
  std::vector<double> log_likelihood;  // one per sample
  BaselineState mode;                  // best state visited
  double mode_log_likelihood = 0.0;
  std::vector<double> acceptance;      // per coordinate, alpha first
  /// Fewer than two observed categories: the likelihood has no maximum.
  bool degenerate = false;
  bool diverged = false;
};

double po_log_likelihood(const Dataset& data, const BaselineState& state);
BaselineResult fit_po_baseline(const Dataset& data, const BaselineConfig& cfg);

}  // namespace monoord
