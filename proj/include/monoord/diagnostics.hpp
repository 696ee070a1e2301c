#pragma once

// Posterior summaries over a stream of sample records: category-probability
// errors against a known truth, covariate inclusion, surfaces and
// standardized regression functions.

#include <cstdint>
#include <span>
#include <vector>

#include "monoord/likelihood.hpp"
#include "monoord/model.hpp"
#include "monoord/mpp.hpp"
#include "monoord/sampler.hpp"

namespace monoord {

/// Streaming form of the per-category and overall mean absolute errors.
/// `truth` is N x K (row-major) true category probabilities.
class MaeAccumulator {
 public:
  MaeAccumulator(const Dataset& data, std::vector<double> truth, LinkSpec link);

  /// Adds one draw given its N x K levels and N offsets.
  void add(std::span<const double> levels, std::span<const double> offsets);
  /// Adds the draw currently held by an engine built on the same dataset.
  void add(const LikelihoodEngine& engine);
  void add(const Configuration& config, const ParametricState& theta);

  std::uint64_t draws() const { return draws_; }
  /// Category k in 1..K. Throws std::domain_error when no observation has y = k.
  double mae_k(int k) const;
  double mae_overall() const;

 private:
  void add_row(std::size_t n, std::span<const double> levels, double offset);

  const Dataset* data_;
  std::vector<double> truth_;
  LinkSpec link_;
  std::vector<std::size_t> class_size_;
  std::vector<double> class_error_;
  double total_error_ = 0.0;
  std::uint64_t draws_ = 0;
  std::vector<double> probs_;
};

double mae_k(std::span<const SampleRecord> records, const ModelSpec& model, const Dataset& data,
             std::span<const double> truth, int k);
double mae_overall(std::span<const SampleRecord> records, const ModelSpec& model,
                   const Dataset& data, std::span<const double> truth);

/// Covariate j is 0-based.
double inclusion_probability(std::span<const SampleRecord> records, int covariates, int j);
double mean_point_count(std::span<const SampleRecord> records, int covariates, int j);

/// Regular grid over [0,1]^2 with `side` nodes per axis, x1 varying fastest.
std::vector<double> unit_grid_2d(int side = 51);

/// Posterior mean of S(k | x) over the rows of `grid` (G x p), k in 1..K+1,
/// with the linear covariates fixed at `z` and the cluster effect at `cluster`
/// (0 leaves it out).
class SurfaceAccumulator {
 public:
  SurfaceAccumulator(std::vector<double> grid, int covariates, int category, LinkSpec link,
                     std::vector<double> z = {}, int cluster = 0);
  void add(const Configuration& config, const ParametricState& theta);
  std::uint64_t draws() const { return draws_; }
  const std::vector<double>& mean() const { return mean_; }

 private:
  std::vector<double> grid_;
  int p_;
  int category_;
  LinkSpec link_;
  std::vector<double> z_;
  int cluster_;
  std::vector<double> mean_;
  std::vector<double> levels_;
  std::uint64_t draws_ = 0;
};

std::vector<double> posterior_mean_surface(std::span<const SampleRecord> records,
                                           const ModelSpec& model, std::span<const double> grid,
                                           int category, std::span<const double> z = {},
                                           int cluster = 0);

/// Standardized regression function of covariate j (0-based): for each grid
/// value g the average over observations of S(k | x_n with x_nj = g), the
/// linear part of each observation included and the cluster effect left out.
/// Kept as a running mean over draws.
class StandardizedAccumulator {
 public:
  StandardizedAccumulator(const Dataset& data, int j, std::vector<double> values, int category,
                          LinkSpec link);
  void add(const Configuration& config, const ParametricState& theta);
  std::uint64_t draws() const { return draws_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& values() const { return values_; }

 private:
  const Dataset* data_;
  int j_;
  std::vector<double> values_;
  int category_;
  LinkSpec link_;
  std::vector<double> mean_;
  std::uint64_t draws_ = 0;
};

std::vector<double> standardized_function(std::span<const SampleRecord> records,
                                          const ModelSpec& model, const Dataset& data, int j,
                                          std::span<const double> values, int category);

/// Per-record traces for export.
std::vector<double> log_likelihood_trace(std::span<const SampleRecord> records);
std::vector<std::uint64_t> total_point_trace(std::span<const SampleRecord> records);

}  // namespace monoord
