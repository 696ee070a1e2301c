#pragma once

// Reversible-jump Metropolis-Hastings sampler for the marked point process
// ordinal model.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "monoord/likelihood.hpp"
#include "monoord/model.hpp"
#include "monoord/mpp.hpp"
#include "monoord/random.hpp"

namespace monoord {

enum class MoveKind : int {
  Birth,
  Death,
  DeathBirth,
  Position,
  JointLevel,
  SingleLevel,
  OriginLevel,
  Beta,
  Gamma,
};
inline constexpr int kMoveKinds = 9;
std::string to_string(MoveKind kind);

struct MoveCounters {
  std::array<std::uint64_t, kMoveKinds> attempts{};
  std::array<std::uint64_t, kMoveKinds> accepts{};

  void record(MoveKind kind, bool accepted) {
    ++attempts[int(kind)];
    if (accepted) ++accepts[int(kind)];
  }
  double rate(MoveKind kind) const {
    const auto a = attempts[int(kind)];
    return a == 0 ? 0.0 : double(accepts[int(kind)]) / double(a);
  }
};

struct SamplerConfig {
  /// Post-burn-in iterations.
  std::uint64_t iterations = 50000;
  std::uint64_t burn_in = 10000;
  std::uint64_t thin = 20;
  std::uint64_t seed = 1;
  // Dimension-changing block: one of these per iteration.
  double birth_weight = 0.4;
  double death_weight = 0.4;
  double death_birth_weight = 0.2;
  // Fixed-dimension block: one of these per iteration.
  double position_weight = 1.0;
  double joint_level_weight = 1.0;
  double single_level_weight = 1.0;
  double origin_level_weight = 1.0;
  // Random-walk scales, adapted during burn-in only.
  double beta_scale = 0.1;
  double gamma_scale = 0.1;
  bool adapt = true;
  double target_acceptance = 0.44;
  /// Ignore the data (prior simulation); every likelihood ratio is 1.
  bool flat_likelihood = false;
  std::uint64_t progress_every = 0;

  void validate() const;
};

/// One thinned posterior draw.
struct SampleRecord {
  std::uint64_t iteration = 0;
  std::vector<std::uint64_t> counts;  // n(Delta_i) per subspace
  std::vector<double> intensities;
  double log_likelihood = 0.0;
  ParametricState theta;
  std::vector<double> origin_marks;
  struct Point {
    int subspace = 0;
    std::vector<double> location;
    std::vector<double> marks;
  };
  std::vector<Point> points;

  static SampleRecord capture(std::uint64_t iteration, const Configuration& config,
                              const ParametricState& theta, double log_likelihood);
  /// Rebuilds the configuration; point order follows the record.
  Configuration reconstruct(const ModelSpec& model) const;
};

/// Mutable chain state. Owned by one thread.
class ChainState {
 public:
  ChainState(const Dataset& data, const ModelSpec& model, const SamplerConfig& cfg);

  const Configuration& config() const { return config_; }
  Configuration& config() { return config_; }
  const ParametricState& theta() const { return theta_; }
  ParametricState& theta() { return theta_; }
  const LikelihoodEngine& engine() const { return engine_; }
  LikelihoodEngine& engine() { return engine_; }
  const ModelSpec& model() const { return model_; }
  const SamplerConfig& sampler() const { return cfg_; }
  const Dataset& data() const { return *data_; }

  double log_likelihood() const { return engine_.log_likelihood(); }
  std::uint64_t iteration() const { return iteration_; }
  void set_iteration(std::uint64_t it) { iteration_ = it; }
  bool in_burn_in() const { return iteration_ < cfg_.burn_in; }
  MoveCounters& counters() { return counters_; }
  const MoveCounters& counters() const { return counters_; }

  // Random-walk scales (log scale for the Robbins-Monro adaptation).
  std::vector<double>& beta_log_scale() { return beta_log_scale_; }
  double& gamma_log_scale() { return gamma_log_scale_; }

  /// Recomputes the likelihood cache from scratch.
  void refresh();

 private:
  const Dataset* data_;
  Dataset empty_;
  ModelSpec model_;
  SamplerConfig cfg_;
  Configuration config_;
  ParametricState theta_;
  LikelihoodEngine engine_;
  std::uint64_t iteration_ = 0;
  MoveCounters counters_;
  std::vector<double> beta_log_scale_;
  double gamma_log_scale_ = 0.0;
};

// M-H log acceptance ratios of the dimension-changing moves.
double birth_log_ratio(double loglik_delta, double rho, double volume, std::size_t count);
double death_log_ratio(double loglik_delta, double rho, double volume, std::size_t count);
double death_birth_log_ratio(double loglik_delta, double rho_death, double volume_death,
                             std::size_t count_death, double rho_birth, double volume_birth,
                             std::size_t count_birth);
/// min(1, exp(log_ratio)) with the -inf conventions of the sampler.
double acceptance_probability(double log_ratio);

bool birth_move(ChainState& state, Rng& rng);
bool death_move(ChainState& state, Rng& rng);
bool death_birth_move(ChainState& state, Rng& rng);
bool position_move(ChainState& state, Rng& rng);
bool joint_level_move(ChainState& state, Rng& rng);
bool single_level_move(ChainState& state, Rng& rng);
bool origin_level_move(ChainState& state, Rng& rng);
void gibbs_intensity(ChainState& state, Rng& rng);
void update_parametric(ChainState& state, Rng& rng);

/// Shape of the origin-level proposal Beta(1 + min(total points, d), 1).
double origin_beta_shape(std::size_t total_points, double d);

struct ProgressInfo {
  std::uint64_t iteration;
  double log_likelihood;
  const MoveCounters* counters;
};

struct ChainResult {
  MoveCounters counters;
  std::uint64_t records = 0;
  double final_log_likelihood = 0.0;
};

using RecordSink = std::function<void(const SampleRecord&, const ChainState&)>;
using ProgressSink = std::function<void(const ProgressInfo&)>;

/// Runs burn_in + iterations sweeps from an empty configuration and emits
/// every thin-th post-burn-in state.
ChainResult run_chain(const Dataset& data, const ModelSpec& model, const SamplerConfig& cfg,
                      const RecordSink& sink, const ProgressSink& progress = {});
std::vector<SampleRecord> run_chain(const Dataset& data, const ModelSpec& model,
                                    const SamplerConfig& cfg);

/// Dataset with no observations and the model's dimensions (prior checks).
Dataset empty_dataset(const ModelSpec& model);

}  // namespace monoord
