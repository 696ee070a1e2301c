#pragma once

// Uniform sampling of ordered mark vectors under box constraints.

#include <cstddef>
#include <span>
#include <vector>

#include "monoord/mpp.hpp"
#include "monoord/random.hpp"

namespace monoord {

inline constexpr std::size_t kMaxMarkRejections = 10000;

namespace detail {

/// Piecewise polynomial on sorted breakpoints; piece j is a polynomial in
/// (t - breaks[j]). Zero left of breaks.front(), constant right of
/// breaks.back().
struct PiecewisePoly {
  std::vector<double> breaks;
  std::vector<std::vector<double>> coef;  // one per interval [breaks[j], breaks[j+1]]
  double tail = 0.0;                      // value right of the last breakpoint

  double operator()(double t) const;
  PiecewisePoly antiderivative() const;  // zero at breaks.front()
};

}  // namespace detail

/// Exact uniform sampler on
///   { d : box[k].lower <= d[k] <= box[k].upper,  d[0] >= d[1] >= ... }.
///
/// Degenerate boxes (lower == upper) are fixed values; the remaining levels
/// split into independent runs, and each run is sampled level by level from
/// its exact conditional density (the volume of the trailing levels as a
/// function of the current one).
class OrderedBoxSampler {
 public:
  explicit OrderedBoxSampler(std::span<const Bounds> box);

  /// Volume of the region over the non-degenerate levels (1 if none).
  double volume() const { return volume_; }
  std::vector<double> sample(Rng& rng) const;

 private:
  struct Run {
    int begin = 0;
    int end = 0;
    // cumulative[i]: antiderivative of the trailing-volume function used as
    // the (unnormalized) CDF for level begin + i.
    std::vector<detail::PiecewisePoly> cumulative;
  };
  std::vector<Bounds> box_;
  std::vector<Run> runs_;
  double volume_ = 1.0;
};

struct MarkDrawStats {
  std::size_t rejections = 0;
  bool used_fallback = false;
};

/// Uniform draw on the ordered box: independent uniforms until one is
/// ordered, switching to the exact sampler after `max_rejections` failures.
std::vector<double> sample_ordered_box(std::span<const Bounds> box, Rng& rng,
                                       MarkDrawStats* stats = nullptr,
                                       std::size_t max_rejections = kMaxMarkRejections);

/// Uniform mark vector for a point at `location`, honouring the ordering
/// within the vector and the domination constraints against every other
/// point of `config` (`exclude` is skipped, e.g. the point being redrawn).
std::vector<double> sample_mark_vector(const Configuration& config,
                                       std::span<const double> location, Rng& rng,
                                       PointId exclude = kNoPoint,
                                       MarkDrawStats* stats = nullptr,
                                       std::size_t max_rejections = kMaxMarkRejections);

}  // namespace monoord
