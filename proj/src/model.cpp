#include "monoord/model.hpp"

#include <cmath>
#include <stdexcept>

namespace monoord {

std::string to_string(LinkKind kind) {
  return kind == LinkKind::Identity ? "identity" : "logit";
}

LinkKind link_kind_from_string(const std::string& s) {
  if (s == "identity") return LinkKind::Identity;
  if (s == "logit") return LinkKind::Logit;
  throw std::invalid_argument("unknown link '" + s + "'");
}

void LinkSpec::validate() const {
  if (kind == LinkKind::Identity) {
    if (range.lower != 0.0 || range.upper != 1.0) {
      throw std::invalid_argument("identity link requires the range [0,1]");
    }
  } else {
    if (!std::isfinite(range.lower) || !std::isfinite(range.upper) ||
        !(range.lower < range.upper)) {
      throw std::invalid_argument("logit link requires a finite range with lower < upper");
    }
  }
}

void Dataset::validate() const {
  const std::size_t N = size();
  if (covariates < 1) throw std::invalid_argument("dataset needs at least one covariate");
  if (levels < 2) throw std::invalid_argument("dataset needs at least two categories");
  if (x.size() != N * covariates) throw std::invalid_argument("x has wrong size");
  if (z.size() != N * linear) throw std::invalid_argument("z has wrong size");
  if (clusters > 0 && cluster.size() != N) throw std::invalid_argument("cluster ids missing");
  if (clusters == 0 && !cluster.empty()) throw std::invalid_argument("cluster ids without clusters");
  for (std::size_t n = 0; n < N; ++n) {
    const std::string row = "row " + std::to_string(n + 1);
    if (y[n] < 1 || y[n] > levels) {
      throw std::invalid_argument(row + ": category " + std::to_string(y[n]) +
                                  " outside 1.." + std::to_string(levels));
    }
    for (double v : x_row(n)) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(row + ": x outside [0,1]");
    }
    for (double v : z_row(n)) {
      if (!std::isfinite(v)) throw std::invalid_argument(row + ": non-finite z");
    }
    if (clusters > 0 && (cluster[n] < 1 || cluster[n] > clusters)) {
      throw std::invalid_argument(row + ": cluster id outside 1.." + std::to_string(clusters));
    }
  }
}

Dataset Dataset::head(std::size_t n) const {
  if (n > size()) throw std::out_of_range("Dataset::head beyond size");
  Dataset d = *this;
  d.y.resize(n);
  d.x.resize(n * covariates);
  d.z.resize(n * linear);
  if (!d.cluster.empty()) d.cluster.resize(n);
  return d;
}

void ModelSpec::validate() const {
  if (levels < 2) throw std::invalid_argument("need at least two categories");
  if (covariates < 1 || covariates > max_covariates) {
    throw std::invalid_argument("covariate count outside [1, max_covariates]");
  }
  link.validate();
  if (linear < 0 || clusters < 0) throw std::invalid_argument("negative parametric sizes");
  if ((linear > 0 || clusters > 0) && link.kind != LinkKind::Logit) {
    throw std::invalid_argument("linear covariates and clusters require the logit link");
  }
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("Gamma hyperparameters must be positive");
  if (!(d >= 0)) throw std::invalid_argument("spiking constant d must be non-negative");
  if (!(tau2_shape > 0) || !(tau2_rate > 0)) {
    throw std::invalid_argument("tau2 prior parameters must be positive");
  }
  if (!(beta_prior_sd >= 0)) throw std::invalid_argument("beta prior sd must be >= 0");
}

void ModelSpec::check_dataset(const Dataset& data) const {
  if (data.covariates != covariates || data.levels != levels || data.linear != linear ||
      data.clusters != clusters) {
    throw std::invalid_argument("dataset dimensions do not match the model");
  }
}

}  // namespace monoord
