#include "monoord/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "monoord/kernels.hpp"

namespace monoord {

MaeAccumulator::MaeAccumulator(const Dataset& data, std::vector<double> truth, LinkSpec link)
    : data_(&data), truth_(std::move(truth)), link_(link) {
  if (truth_.size() != data.size() * std::size_t(data.levels)) {
    throw std::invalid_argument("MaeAccumulator: truth must be N x K");
  }
  class_size_.assign(data.levels, 0);
  class_error_.assign(data.levels, 0.0);
  for (int y : data.y) ++class_size_[y - 1];
  probs_.resize(data.levels);
}

void MaeAccumulator::add_row(std::size_t n, std::span<const double> levels, double offset) {
  const int K = data_->levels;
  category_probs_from_levels(levels, offset, link_, probs_);
  const double* t = truth_.data() + n * K;
  double row = 0.0;
  for (int k = 0; k < K; ++k) row += std::abs(probs_[k] - t[k]);
  total_error_ += row;
  const int y = data_->y[n];
  class_error_[y - 1] += std::abs(probs_[y - 1] - t[y - 1]);
}

void MaeAccumulator::add(std::span<const double> levels, std::span<const double> offsets) {
  const std::size_t N = data_->size();
  const int K = data_->levels;
  if (levels.size() != N * K || offsets.size() != N) {
    throw std::invalid_argument("MaeAccumulator: draw size mismatch");
  }
  for (std::size_t n = 0; n < N; ++n) add_row(n, levels.subspan(n * K, K), offsets[n]);
  ++draws_;
}

void MaeAccumulator::add(const LikelihoodEngine& engine) {
  if (engine.size() != data_->size()) throw std::invalid_argument("MaeAccumulator: engine size");
  for (std::size_t n = 0; n < engine.size(); ++n) add_row(n, engine.levels(n), engine.offset(n));
  ++draws_;
}

void MaeAccumulator::add(const Configuration& config, const ParametricState& theta) {
  const std::size_t N = data_->size();
  std::vector<double> levels(N * data_->levels);
  kernels::envelope_parallel(config, data_->x, levels);
  std::vector<double> offsets(N);
  for (std::size_t n = 0; n < N; ++n) {
    offsets[n] = linear_offset(data_->z_row(n), data_->clusters > 0 ? data_->cluster[n] : 0, theta);
  }
  add(levels, offsets);
}

double MaeAccumulator::mae_k(int k) const {
  if (k < 1 || k > data_->levels) throw std::out_of_range("mae_k: category out of range");
  if (class_size_[k - 1] == 0) {
    throw std::domain_error("mae_k: no observation in category " + std::to_string(k));
  }
  if (draws_ == 0) throw std::domain_error("mae_k: no draws");
  return class_error_[k - 1] / (double(class_size_[k - 1]) * double(draws_));
}

double MaeAccumulator::mae_overall() const {
  if (draws_ == 0 || data_->size() == 0) throw std::domain_error("mae_overall: nothing to average");
  return total_error_ / (double(data_->size()) * data_->levels * double(draws_));
}

namespace {

MaeAccumulator accumulate(std::span<const SampleRecord> records, const ModelSpec& model,
                          const Dataset& data, std::span<const double> truth) {
  MaeAccumulator acc(data, {truth.begin(), truth.end()}, model.link);
  for (const auto& r : records) acc.add(r.reconstruct(model), r.theta);
  return acc;
}

template <class F>
double average_over_records(std::span<const SampleRecord> records, int covariates, int j, F f) {
  if (records.empty()) throw std::domain_error("no sample records");
  if (j < 0 || j >= covariates) throw std::out_of_range("covariate index out of range");
  const auto subs = enumerate_subspaces(covariates, kDefaultMaxCovariates);
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.counts.size() != subs.size()) throw std::invalid_argument("record does not match p");
    std::uint64_t n = 0;
    for (std::size_t s = 0; s < subs.size(); ++s) {
      if (subs[s].contains(j)) n += r.counts[s];
    }
    sum += f(n);
  }
  return sum / double(records.size());
}

}  // namespace

double mae_k(std::span<const SampleRecord> records, const ModelSpec& model, const Dataset& data,
             std::span<const double> truth, int k) {
  return accumulate(records, model, data, truth).mae_k(k);
}

double mae_overall(std::span<const SampleRecord> records, const ModelSpec& model,
                   const Dataset& data, std::span<const double> truth) {
  return accumulate(records, model, data, truth).mae_overall();
}

double inclusion_probability(std::span<const SampleRecord> records, int covariates, int j) {
  return average_over_records(records, covariates, j,
                              [](std::uint64_t n) { return n > 0 ? 1.0 : 0.0; });
}

double mean_point_count(std::span<const SampleRecord> records, int covariates, int j) {
  return average_over_records(records, covariates, j, [](std::uint64_t n) { return double(n); });
}

std::vector<double> unit_grid_2d(int side) {
  if (side < 2) throw std::invalid_argument("grid side must be at least 2");
  std::vector<double> g;
  g.reserve(std::size_t(side) * side * 2);
  for (int b = 0; b < side; ++b) {
    for (int a = 0; a < side; ++a) {
      g.push_back(double(a) / (side - 1));
      g.push_back(double(b) / (side - 1));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

SurfaceAccumulator::SurfaceAccumulator(std::vector<double> grid, int covariates, int category,
                                       LinkSpec link, std::vector<double> z, int cluster)
    : grid_(std::move(grid)),
      p_(covariates),
      category_(category),
      link_(link),
      z_(std::move(z)),
      cluster_(cluster) {
  if (p_ < 1 || grid_.size() % p_ != 0) throw std::invalid_argument("surface grid shape");
  mean_.assign(grid_.size() / p_, 0.0);
}

void SurfaceAccumulator::add(const Configuration& config, const ParametricState& theta) {
  const int K = config.levels();
  if (category_ < 1 || category_ > K + 1) throw std::out_of_range("surface category");
  if (z_.size() != theta.beta.size()) {
    if (!z_.empty()) throw std::invalid_argument("surface: z does not match beta");
    z_.assign(theta.beta.size(), 0.0);
  }
  const double off = linear_offset(z_, cluster_, theta);
  levels_.resize(mean_.size() * K);
  kernels::envelope_parallel(config, grid_, levels_);
  ++draws_;
  const double w = 1.0 / double(draws_);
  for (std::size_t g = 0; g < mean_.size(); ++g) {
    const double s = survival_from_levels(
        category_, std::span<const double>(levels_).subspan(g * K, K), off, link_);
    mean_[g] += (s - mean_[g]) * w;
  }
}

std::vector<double> posterior_mean_surface(std::span<const SampleRecord> records,
                                           const ModelSpec& model, std::span<const double> grid,
                                           int category, std::span<const double> z, int cluster) {
  SurfaceAccumulator acc({grid.begin(), grid.end()}, model.covariates, category, model.link,
                         {z.begin(), z.end()}, cluster);
  for (const auto& r : records) acc.add(r.reconstruct(model), r.theta);
  return acc.mean();
}

// ---------------------------------------------------------------------------

StandardizedAccumulator::StandardizedAccumulator(const Dataset& data, int j,
                                                 std::vector<double> values, int category,
                                                 LinkSpec link)
    : data_(&data), j_(j), values_(std::move(values)), category_(category), link_(link) {
  if (j < 0 || j >= data.covariates) throw std::out_of_range("standardized: covariate index");
  if (category < 1 || category > data.levels + 1) throw std::out_of_range("standardized: category");
  if (data.size() == 0) throw std::invalid_argument("standardized: empty dataset");
  mean_.assign(values_.size(), 0.0);
}

void StandardizedAccumulator::add(const Configuration& config, const ParametricState& theta) {
  const std::size_t N = data_->size();
  const int p = data_->covariates;
  const int K = data_->levels;
  std::vector<double> offsets(N);
  for (std::size_t n = 0; n < N; ++n) offsets[n] = linear_offset(data_->z_row(n), 0, theta);
  std::vector<double> x(data_->x);
  std::vector<double> levels(N * K);
  ++draws_;
  const double w = 1.0 / double(draws_);
  for (std::size_t g = 0; g < values_.size(); ++g) {
    for (std::size_t n = 0; n < N; ++n) x[n * p + j_] = values_[g];
    kernels::envelope_parallel(config, x, levels);
    double s = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      s += survival_from_levels(category_, std::span<const double>(levels).subspan(n * K, K),
                                offsets[n], link_);
    }
    mean_[g] += (s / double(N) - mean_[g]) * w;
  }
}

std::vector<double> standardized_function(std::span<const SampleRecord> records,
                                          const ModelSpec& model, const Dataset& data, int j,
                                          std::span<const double> values, int category) {
  StandardizedAccumulator acc(data, j, {values.begin(), values.end()}, category, model.link);
  for (const auto& r : records) acc.add(r.reconstruct(model), r.theta);
  return acc.mean();
}

std::vector<double> log_likelihood_trace(std::span<const SampleRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.log_likelihood);
  return out;
}

std::vector<std::uint64_t> total_point_trace(std::span<const SampleRecord> records) {
  std::vector<std::uint64_t> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.points.size());
  return out;
}

}  // namespace monoord
