#include "monoord/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monoord/likelihood.hpp"
#include "monoord/random.hpp"

namespace monoord {

std::string to_string(Family f) {
  switch (f) {
    case Family::Linear: return "linear";
    case Family::Continuous: return "continuous";
    case Family::Discontinuous: return "discontinuous";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "linear") return Family::Linear;
  if (s == "continuous") return Family::Continuous;
  if (s == "discontinuous") return Family::Discontinuous;
  throw std::invalid_argument("unknown scenario family '" + s + "'");
}

std::string to_string(ScenarioMode m) {
  return m == ScenarioMode::Nonparametric ? "nonparametric" : "semiparametric";
}

ScenarioMode scenario_mode_from_string(const std::string& s) {
  if (s == "nonparametric") return ScenarioMode::Nonparametric;
  if (s == "semiparametric") return ScenarioMode::Semiparametric;
  throw std::invalid_argument("unknown scenario mode '" + s + "'");
}

namespace {

constexpr double kThreshold = 0.2;  // continuous family: flat below this on either axis

double linear_shape(int k, double x1, double x2) {
  static constexpr double c[] = {0.65, 0.35, 0.15, 0.05};
  static constexpr double s[] = {0.3, 0.5, 0.5, 0.3};
  const double t = 0.5 * (x1 + x2);
  return std::clamp(c[k - 2] + s[k - 2] * t, 0.0, 1.0);
}

double continuous_shape(int k, double x1, double x2) {
  static constexpr double c[] = {0.51, 0.4, 0.3, 0.075};
  static constexpr double s[] = {0.4, 0.45, 0.5, 0.5};
  const double u = std::max(x1 - kThreshold, 0.0);
  const double v = std::max(x2 - kThreshold, 0.0);
  const double g = std::sqrt(u * v) / (1.0 - kThreshold);
  return c[k - 2] + s[k - 2] * g;
}

double discontinuous_shape(int k, double x1, double x2) {
  auto ind = [](bool b) { return b ? 1.0 : 0.0; };
  switch (k) {
    case 2: return 0.70 + 0.15 * ind(x1 >= 0.3) + 0.10 * ind(x2 >= 0.5);
    case 3: return 0.50 + 0.15 * ind(x1 >= 0.5) + 0.15 * ind(x2 >= 0.3);
    case 4: return 0.35 + 0.15 * ind(x1 >= 0.6 && x2 >= 0.6) + 0.10 * ind(x1 >= 0.2);
    default: return 0.20 + 0.10 * ind(x2 >= 0.4) + 0.10 * ind(x1 >= 0.7);
  }
}

}  // namespace

double TruthOracle::shape(int k, std::span<const double> x) const {
  const int K = levels();
  if (k < 1 || k > K + 1) throw std::out_of_range("shape: category out of range");
  if (x.size() < 2) throw std::invalid_argument("shape: need two covariates");
  if (k == 1) return 1.0;
  if (k == K + 1) return 0.0;
  switch (family) {
    case Family::Linear: return linear_shape(k, x[0], x[1]);
    case Family::Continuous: return continuous_shape(k, x[0], x[1]);
    case Family::Discontinuous: return discontinuous_shape(k, x[0], x[1]);
  }
  return 0.0;
}

std::vector<double> TruthOracle::levels_at(std::span<const double> x) const {
  std::vector<double> out(levels());
  for (int k = 1; k <= levels(); ++k) {
    const double s = shape(k, x);
    out[k - 1] = mode == ScenarioMode::Nonparametric ? s : -2.0 + 4.0 * s;
  }
  return out;
}

double TruthOracle::survival(int k, std::span<const double> x, std::span<const double> z) const {
  if (mode == ScenarioMode::Nonparametric) return shape(k, x);
  if (k == 1) return 1.0;
  if (k == levels() + 1) return 0.0;
  double eta = -2.0 + 4.0 * shape(k, x);
  for (std::size_t j = 0; j < beta.size() && j < z.size(); ++j) eta += beta[j] * z[j];
  return expit(eta);
}

std::vector<double> truth_probs(const TruthOracle& oracle, std::span<const double> x,
                                std::span<const double> z) {
  const auto lv = oracle.levels_at(x);
  const LinkSpec link = oracle.mode == ScenarioMode::Nonparametric
                            ? LinkSpec::identity()
                            : LinkSpec::logit(-2.0, 2.0);
  double off = 0.0;
  for (std::size_t j = 0; j < oracle.beta.size() && j < z.size(); ++j) off += oracle.beta[j] * z[j];
  std::vector<double> out(oracle.levels());
  category_probs_from_levels(lv, off, link, out);
  return out;
}

std::vector<double> truth_matrix(const TruthOracle& oracle, const Dataset& data) {
  const int K = oracle.levels();
  std::vector<double> out(data.size() * K);
  for (std::size_t n = 0; n < data.size(); ++n) {
    const auto p = truth_probs(oracle, data.x_row(n), data.z_row(n));
    std::copy(p.begin(), p.end(), out.begin() + n * K);
  }
  return out;
}

Scenario make_scenario(const ScenarioSpec& spec) {
  if (spec.noise_covariates < 0) throw std::invalid_argument("noise covariates must be >= 0");
  const bool semi = spec.mode == ScenarioMode::Semiparametric;
  Scenario sc;
  auto& o = sc.oracle;
  o.family = spec.family;
  o.mode = spec.mode;
  o.covariates = 2 + spec.noise_covariates;
  if (semi) o.beta = {0.3, -0.5, 0.1};

  auto& d = sc.data;
  d.covariates = o.covariates;
  d.levels = kScenarioLevels;
  d.linear = semi ? kScenarioLinear : 0;
  d.clusters = 0;
  d.x.reserve(spec.n * d.covariates);
  d.z.reserve(spec.n * d.linear);
  d.y.reserve(spec.n);

  Rng rng(spec.seed);
  std::vector<double> x(d.covariates), z(d.linear);
  for (std::size_t n = 0; n < spec.n; ++n) {
    for (auto& v : x) v = rng.uniform();
    for (auto& v : z) v = rng.normal();
    const auto p = truth_probs(o, x, z);
    const double u = rng.uniform();
    int y = kScenarioLevels;
    double cum = 0.0;
    for (int k = 0; k < kScenarioLevels; ++k) {
      cum += p[k];
      if (u < cum) {
        y = k + 1;
        break;
      }
    }
    d.x.insert(d.x.end(), x.begin(), x.end());
    d.z.insert(d.z.end(), z.begin(), z.end());
    d.y.push_back(y);
  }
  return sc;
}

ModelSpec scenario_model(const ScenarioSpec& spec) {
  ModelSpec m;
  m.levels = kScenarioLevels;
  m.covariates = 2 + spec.noise_covariates;
  if (spec.mode == ScenarioMode::Semiparametric) {
    m.link = LinkSpec::logit(-5.0, 5.0);
    m.linear = kScenarioLinear;
  }
  return m;
}

}  // namespace monoord
