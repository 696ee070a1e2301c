#pragma once

// Synthetic ordinal data with known monotone survival surfaces on [0,1]^2.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "monoord/model.hpp"

namespace monoord {

enum class Family { Linear, Continuous, Discontinuous };
enum class ScenarioMode { Nonparametric, Semiparametric };

std::string to_string(Family f);
Family family_from_string(const std::string& s);
std::string to_string(ScenarioMode m);
ScenarioMode scenario_mode_from_string(const std::string& s);

inline constexpr int kScenarioLevels = 5;
inline constexpr int kScenarioLinear = 3;

struct ScenarioSpec {
  Family family = Family::Linear;
  ScenarioMode mode = ScenarioMode::Nonparametric;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  /// Extra uniform covariates appended after x1, x2 that the truth ignores.
  int noise_covariates = 0;
};

/// Exact category probabilities of a scenario.
struct TruthOracle {
  Family family = Family::Linear;
  ScenarioMode mode = ScenarioMode::Nonparametric;
  int covariates = 2;
  std::vector<double> beta;  // semi-parametric only

  int levels() const { return kScenarioLevels; }
  /// Shape S(k | x) in [0,1] of the family, k in 1..K+1; only x1, x2 are read.
  double shape(int k, std::span<const double> x) const;
  /// Monotone levels lambda_1..lambda_K at x: the shape itself, or its
  /// rescaling to [-2, 2] in semi-parametric mode.
  std::vector<double> levels_at(std::span<const double> x) const;
  double survival(int k, std::span<const double> x, std::span<const double> z = {}) const;
};

std::vector<double> truth_probs(const TruthOracle& oracle, std::span<const double> x,
                                std::span<const double> z = {});
/// N x K true probabilities for every observation of `data`.
std::vector<double> truth_matrix(const TruthOracle& oracle, const Dataset& data);

struct Scenario {
  Dataset data;
  TruthOracle oracle;
};

/// Rows are generated one at a time (x1, x2, noise columns, z, then the
/// response), so a smaller n gives a prefix of a larger draw with the same seed.
Scenario make_scenario(const ScenarioSpec& spec);

/// Model matching a scenario: identity link, or logit on [-5, 5] with three
/// linear covariates in semi-parametric mode.
ModelSpec scenario_model(const ScenarioSpec& spec);

}  // namespace monoord
