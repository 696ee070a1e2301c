#pragma once

// Ordinal cumulative-probability likelihood with an incremental cache.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "monoord/model.hpp"
#include "monoord/mpp.hpp"

namespace monoord {

/// Log-likelihood of a state with an empty category (identity link ties).
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

double expit(double v);

/// S(category | ...) from the K levels at a covariate value. `category` is
/// 1-based in 1..K+1; S(1) = 1 and S(K+1) = 0.
double survival_from_levels(int category, std::span<const double> levels, double offset,
                            const LinkSpec& link);
/// P(Y = k) = S(k) - S(k+1) for k = 1..K.
void category_probs_from_levels(std::span<const double> levels, double offset,
                                const LinkSpec& link, std::span<double> out);
/// log P(Y = category), kLogZero when the probability is not positive.
double observation_log_prob(int category, std::span<const double> levels, double offset,
                            const LinkSpec& link);
/// sum_j beta_j z_j + gamma_c. `cluster` is 1-based; 0 means no cluster term.
double linear_offset(std::span<const double> z, int cluster, const ParametricState& theta);

double survival(int category, std::span<const double> x, std::span<const double> z,
                int cluster, const Configuration& config, const ParametricState& theta,
                const LinkSpec& link);
std::vector<double> category_probs(std::span<const double> x, std::span<const double> z,
                                   int cluster, const Configuration& config,
                                   const ParametricState& theta, const LinkSpec& link);

/// Full recomputation; kLogZero if any observed category has probability 0.
double log_likelihood(const Dataset& data, const Configuration& config,
                      const ParametricState& theta, const LinkSpec& link);

/// Local change to a chain state. Added and changed points already hold
/// their new values in the configuration handed to `propose`; `removed` and
/// `changed` carry the previous values.
struct Edit {
  std::vector<PointId> added;
  std::vector<PointSnapshot> removed;
  std::vector<PointSnapshot> changed;
  bool beta_changed = false;
  std::vector<int> clusters_changed;  // 0-based cluster indices

  bool empty() const {
    return added.empty() && removed.empty() && changed.empty() && !beta_changed &&
           clusters_changed.empty();
  }
};

/// Per-observation cache of the envelope levels, the generating point of
/// each level, the linear offset and the log-probability term.
///
/// `propose` evaluates an edit against the cache without modifying it;
/// `commit` adopts the proposal and `discard` drops it. The committed total
/// is a compensated sum over the per-observation terms in index order, so it
/// matches `log_likelihood` bit for bit. An empty dataset gives the flat
/// likelihood (always 0).
class LikelihoodEngine {
 public:
  LikelihoodEngine(const Dataset& data, LinkSpec link);

  void rebuild(const Configuration& config, const ParametricState& theta);
  double log_likelihood() const { return total_; }

  double propose(const Edit& edit, const Configuration& config,
                 const ParametricState& theta);
  void commit();
  void discard();
  /// Observations re-evaluated by the last proposal.
  std::size_t touched() const { return pending_obs_.size(); }

  std::size_t size() const { return N_; }
  std::span<const double> levels(std::size_t n) const {
    return {lambda_.data() + n * K_, std::size_t(K_)};
  }
  double offset(std::size_t n) const { return offset_[n]; }
  const LinkSpec& link() const { return link_; }
  const Dataset& data() const { return *data_; }

 private:
  double observation_offset(std::size_t n, const ParametricState& theta) const;
  double sum_terms() const;

  const Dataset* data_;
  LinkSpec link_;
  std::size_t N_;
  int K_;
  int p_;
  std::vector<double> lambda_;
  std::vector<PointId> argmax_;
  std::vector<double> offset_;
  std::vector<double> term_;
  std::vector<std::vector<std::size_t>> cluster_members_;
  double total_ = 0.0;
  bool built_ = false;

  bool pending_ = false;
  std::vector<std::size_t> pending_obs_;
  std::vector<double> pending_lambda_;
  std::vector<PointId> pending_argmax_;
  std::vector<double> pending_offset_;
  std::vector<double> pending_term_;
  std::vector<unsigned char> mark_;  // scratch: observation already queued
};

}  // namespace monoord
