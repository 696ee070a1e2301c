#include "monoord/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monoord/kernels.hpp"

namespace monoord {

double expit(double v) {
  if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

double survival_from_levels(int category, std::span<const double> levels, double offset,
                            const LinkSpec& link) {
  const int K = static_cast<int>(levels.size());
  if (category < 1 || category > K + 1) {
    throw std::out_of_range("survival: category " + std::to_string(category) +
                            " outside 1.." + std::to_string(K + 1));
  }
  if (category == 1) return 1.0;
  if (category == K + 1) return 0.0;
  const double level = levels[category - 1];
  return link.kind == LinkKind::Identity ? level : expit(level + offset);
}

namespace {

// S(k) - S(k+1) for 1 <= k <= K, evaluated without cancellation in the
// upper tail of the logistic.
double category_prob(int k, std::span<const double> levels, double offset,
                     const LinkSpec& link) {
  const int K = static_cast<int>(levels.size());
  if (link.kind == LinkKind::Identity) {
    const double hi = k == 1 ? 1.0 : levels[k - 1];
    const double lo = k == K ? 0.0 : levels[k];
    return hi - lo;
  }
  if (k == 1) return expit(-(levels[1] + offset));
  if (k == K) return expit(levels[K - 1] + offset);
  const double a = levels[k - 1] + offset;
  const double b = levels[k] + offset;
  if (b > 0) return expit(-b) - expit(-a);
  return expit(a) - expit(b);
}

}  // namespace

void category_probs_from_levels(std::span<const double> levels, double offset,
                                const LinkSpec& link, std::span<double> out) {
  const int K = static_cast<int>(levels.size());
  if (static_cast<int>(out.size()) != K) throw std::invalid_argument("category_probs: size");
  for (int k = 1; k <= K; ++k) out[k - 1] = category_prob(k, levels, offset, link);
}

double observation_log_prob(int category, std::span<const double> levels, double offset,
                            const LinkSpec& link) {
  const double pr = category_prob(category, levels, offset, link);
  return pr > 0 ? std::log(pr) : kLogZero;
}

double linear_offset(std::span<const double> z, int cluster, const ParametricState& theta) {
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += theta.beta[j] * z[j];
  if (cluster > 0) s += theta.gamma[cluster - 1];
  return s;
}

double survival(int category, std::span<const double> x, std::span<const double> z,
                int cluster, const Configuration& config, const ParametricState& theta,
                const LinkSpec& link) {
  std::vector<double> levels(config.levels());
  config.evaluate_levels(x, levels);
  return survival_from_levels(category, levels, linear_offset(z, cluster, theta), link);
}

std::vector<double> category_probs(std::span<const double> x, std::span<const double> z,
                                   int cluster, const Configuration& config,
                                   const ParametricState& theta, const LinkSpec& link) {
  std::vector<double> levels(config.levels()), out(config.levels());
  config.evaluate_levels(x, levels);
  category_probs_from_levels(levels, linear_offset(z, cluster, theta), link, out);
  return out;
}

double log_likelihood(const Dataset& data, const Configuration& config,
                      const ParametricState& theta, const LinkSpec& link) {
  return kernels::log_likelihood_parallel(data, config, theta, link);
}

// ---------------------------------------------------------------------------

LikelihoodEngine::LikelihoodEngine(const Dataset& data, LinkSpec link)
    : data_(&data),
      link_(link),
      N_(data.size()),
      K_(data.levels),
      p_(data.covariates) {
  lambda_.assign(N_ * K_, 0.0);
  argmax_.assign(N_ * K_, kOriginId);
  offset_.assign(N_, 0.0);
  term_.assign(N_, 0.0);
  mark_.assign(N_, 0);
  cluster_members_.resize(data.clusters);
  for (std::size_t n = 0; n < N_ && data.clusters > 0; ++n) {
    cluster_members_[data.cluster[n] - 1].push_back(n);
  }
}

double LikelihoodEngine::observation_offset(std::size_t n, const ParametricState& theta) const {
  const int c = data_->clusters > 0 ? data_->cluster[n] : 0;
  return linear_offset(data_->z_row(n), c, theta);
}

double LikelihoodEngine::sum_terms() const { return kernels::compensated_sum(term_); }

void LikelihoodEngine::rebuild(const Configuration& config, const ParametricState& theta) {
  if (config.levels() != K_ || config.dims() != p_) {
    throw std::invalid_argument("LikelihoodEngine: configuration does not match data");
  }
  for (std::size_t n = 0; n < N_; ++n) {
    std::span<double> row(lambda_.data() + n * K_, K_);
    std::span<PointId> arg(argmax_.data() + n * K_, K_);
    config.evaluate_levels(data_->x_row(n), row, arg);
    offset_[n] = observation_offset(n, theta);
    term_[n] = observation_log_prob(data_->y[n], row, offset_[n], link_);
  }
  total_ = sum_terms();
  built_ = true;
  pending_ = false;
  pending_obs_.clear();
}

double LikelihoodEngine::propose(const Edit& edit, const Configuration& config,
                                 const ParametricState& theta) {
  if (!built_) throw std::logic_error("LikelihoodEngine: rebuild before propose");
  pending_ = true;
  pending_obs_.clear();
  pending_lambda_.clear();
  pending_argmax_.clear();
  pending_offset_.clear();
  pending_term_.clear();
  if (edit.empty() || N_ == 0) return total_;

  for (const auto& s : edit.removed) {
    if (config.alive(s.id) && config.subspace_of(s.id) == s.subspace &&
        std::equal(s.location.begin(), s.location.end(), config.location(s.id).begin()) &&
        std::find(edit.added.begin(), edit.added.end(), s.id) == edit.added.end()) {
      throw std::invalid_argument("Edit: removed point is still present");
    }
  }
  for (PointId id : edit.added) {
    if (!config.alive(id)) throw std::invalid_argument("Edit: added point not in configuration");
  }
  for (const auto& s : edit.changed) {
    if (!config.alive(s.id)) throw std::invalid_argument("Edit: changed point not in configuration");
  }

  // Locations whose dominated region may change.
  std::vector<const double*> regions;
  for (const auto& s : edit.removed) regions.push_back(s.location.data());
  for (PointId id : edit.added) regions.push_back(config.location(id).data());
  for (const auto& s : edit.changed) {
    regions.push_back(s.location.data());
    regions.push_back(config.location(s.id).data());
  }
  // Points whose new contribution can only raise levels.
  std::vector<PointId> raisers(edit.added);
  for (const auto& s : edit.changed) raisers.push_back(s.id);

  auto in_region = [&](std::span<const double> x) {
    for (const double* r : regions) {
      bool dom = true;
      for (int j = 0; j < p_ && dom; ++j) dom = r[j] <= x[j];
      if (dom) return true;
    }
    return false;
  };

  auto queue_cluster = [&](std::size_t n) { mark_[n] = 1; };
  if (!edit.beta_changed) {
    for (int c : edit.clusters_changed) {
      if (c < 0 || c >= static_cast<int>(cluster_members_.size())) {
        throw std::invalid_argument("Edit: cluster index out of range");
      }
      for (std::size_t n : cluster_members_[c]) queue_cluster(n);
    }
  }

  std::vector<double> row(K_);
  std::vector<PointId> arg(K_);
  double delta = 0.0, comp = 0.0;
  bool zero = false;
  for (std::size_t n = 0; n < N_; ++n) {
    const auto x = data_->x_row(n);
    const bool offset_changes = edit.beta_changed || mark_[n];
    mark_[n] = 0;
    const bool envelope_changes = !regions.empty() && in_region(x);
    if (!offset_changes && !envelope_changes) continue;

    const double* old_row = lambda_.data() + n * K_;
    const PointId* old_arg = argmax_.data() + n * K_;
    std::copy(old_row, old_row + K_, row.begin());
    std::copy(old_arg, old_arg + K_, arg.begin());

    if (envelope_changes) {
      bool full = false;
      for (int k = 0; k < K_ && !full; ++k) {
        const PointId a = old_arg[k];
        for (const auto& s : edit.removed) {
          if (s.id == a) { full = true; break; }
        }
        if (full) break;
        for (const auto& s : edit.changed) {
          if (s.id != a) continue;
          if (!dominates(config.location(a), x) || config.marks(a)[k] < old_row[k]) full = true;
          break;
        }
      }
      if (full) {
        config.evaluate_levels(x, row, arg);
      } else {
        for (PointId id : raisers) {
          if (!dominates(config.location(id), x)) continue;
          const auto m = config.marks(id);
          for (int k = 0; k < K_; ++k) {
            if (m[k] > row[k]) {
              row[k] = m[k];
              arg[k] = id;
            }
          }
        }
      }
    }
    const double off = offset_changes ? observation_offset(n, theta) : offset_[n];
    const double term = observation_log_prob(data_->y[n], row, off, link_);

    pending_obs_.push_back(n);
    pending_lambda_.insert(pending_lambda_.end(), row.begin(), row.end());
    pending_argmax_.insert(pending_argmax_.end(), arg.begin(), arg.end());
    pending_offset_.push_back(off);
    pending_term_.push_back(term);

    if (term == kLogZero) {
      zero = true;
      continue;
    }
    const double diff = term - term_[n];
    const double t = delta + diff;
    comp += std::abs(delta) >= std::abs(diff) ? (delta - t) + diff : (diff - t) + delta;
    delta = t;
  }
  if (zero) return kLogZero;
  if (total_ == kLogZero) {
    // Some untouched or replaced term was -inf; recompute the proposed sum.
    std::vector<double> terms(term_);
    for (std::size_t i = 0; i < pending_obs_.size(); ++i) terms[pending_obs_[i]] = pending_term_[i];
    return kernels::compensated_sum(terms);
  }
  return total_ + (delta + comp);
}

void LikelihoodEngine::commit() {
  if (!pending_) throw std::logic_error("LikelihoodEngine: nothing to commit");
  for (std::size_t i = 0; i < pending_obs_.size(); ++i) {
    const std::size_t n = pending_obs_[i];
    std::copy_n(pending_lambda_.begin() + i * K_, K_, lambda_.begin() + n * K_);
    std::copy_n(pending_argmax_.begin() + i * K_, K_, argmax_.begin() + n * K_);
    offset_[n] = pending_offset_[i];
    term_[n] = pending_term_[i];
  }
  if (!pending_obs_.empty()) total_ = sum_terms();
  pending_ = false;
}

void LikelihoodEngine::discard() {
  pending_ = false;
  pending_obs_.clear();
}

}  // namespace monoord
