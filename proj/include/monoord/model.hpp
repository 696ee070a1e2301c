#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "monoord/mpp.hpp"

namespace monoord {

enum class LinkKind { Identity, Logit };

std::string to_string(LinkKind kind);
LinkKind link_kind_from_string(const std::string& s);

/// Scale on which the monotone levels live. Identity: levels are survival
/// probabilities in [0,1]. Logit: levels are intercepts in a finite range.
struct LinkSpec {
  LinkKind kind = LinkKind::Identity;
  Bounds range{0.0, 1.0};

  static LinkSpec identity() { return {}; }
  static LinkSpec logit(double lower, double upper) { return {LinkKind::Logit, {lower, upper}}; }
  bool pins_first_level() const { return kind == LinkKind::Identity; }
  void validate() const;
};

/// N observations with monotone covariates x in [0,1]^p, ordinal labels
/// y in {1..K}, optional linear covariates z (q columns) and optional cluster
/// ids in {1..C}. Matrices are row-major.
struct Dataset {
  int covariates = 0;  // p
  int levels = 0;      // K
  int linear = 0;      // q
  int clusters = 0;    // C
  std::vector<double> x;
  std::vector<int> y;
  std::vector<double> z;
  std::vector<int> cluster;

  std::size_t size() const { return y.size(); }
  std::span<const double> x_row(std::size_t n) const {
    return {x.data() + n * covariates, std::size_t(covariates)};
  }
  std::span<const double> z_row(std::size_t n) const {
    return {z.data() + n * linear, std::size_t(linear)};
  }
  /// Throws std::invalid_argument naming the first offending row.
  void validate() const;
  /// First `n` rows.
  Dataset head(std::size_t n) const;
};

struct ParametricState {
  std::vector<double> beta;
  std::vector<double> gamma;
  double tau2 = 1.0;
};

struct ModelSpec {
  int levels = 5;
  int covariates = 2;
  LinkSpec link;
  int linear = 0;
  int clusters = 0;
  // Gamma(a, b) prior on the point-process intensities.
  double a = 0.1;
  double b = 0.1;
  // Spiking penalty for the origin levels; 0 gives the uniform prior.
  double d = 0.0;
  // InverseGamma prior on the random-intercept variance.
  double tau2_shape = 0.01;
  double tau2_rate = 0.01;
  // Prior sd of each beta; 0 means the improper flat prior.
  double beta_prior_sd = 0.0;
  int max_covariates = kDefaultMaxCovariates;

  void validate() const;
  /// Checks that the dataset dimensions agree with this model.
  void check_dataset(const Dataset& data) const;
};

}  // namespace monoord
