#include "monoord/marks.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace monoord {

namespace detail {

double PiecewisePoly::operator()(double t) const {
  if (breaks.empty() || t < breaks.front()) return 0.0;
  if (t >= breaks.back()) return tail;
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  const std::size_t j = std::size_t(it - breaks.begin()) - 1;
  const auto& c = coef[j];
  const double u = t - breaks[j];
  double v = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) v = v * u + c[n];
  return v;
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  PiecewisePoly out;
  out.breaks = breaks;
  out.coef.resize(coef.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    const auto& c = coef[j];
    auto& a = out.coef[j];
    a.assign(c.size() + 1, 0.0);
    a[0] = acc;
    for (std::size_t n = 0; n < c.size(); ++n) a[n + 1] = c[n] / double(n + 1);
    const double w = breaks[j + 1] - breaks[j];
    double v = 0.0;
    for (std::size_t n = a.size(); n-- > 0;) v = v * w + a[n];
    acc = v;
  }
  out.tail = acc;
  return out;
}

}  // namespace detail

namespace {

// Implied bounds of a non-increasing chain: level i lies in
// [max_{j>=i} lower_j, min_{j<=i} upper_j].
std::vector<Bounds> propagate(std::span<const Bounds> box) {
  std::vector<Bounds> b(box.begin(), box.end());
  for (std::size_t i = 1; i < b.size(); ++i) b[i].upper = std::min(b[i].upper, b[i - 1].upper);
  for (std::size_t i = b.size(); i-- > 1;) b[i - 1].lower = std::max(b[i - 1].lower, b[i].lower);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].lower > b[i].upper) {
      throw std::domain_error("ordered mark region is empty at level " + std::to_string(i));
    }
  }
  return b;
}

}  // namespace

OrderedBoxSampler::OrderedBoxSampler(std::span<const Bounds> box) : box_(propagate(box)) {
  const int K = static_cast<int>(box_.size());
  int k = 0;
  while (k < K) {
    if (box_[k].degenerate()) {
      ++k;
      continue;
    }
    Run run;
    run.begin = k;
    while (k < K && !box_[k].degenerate()) ++k;
    run.end = k;
    const int m = run.end - run.begin;

    std::vector<double> breaks;
    for (int i = run.begin; i < run.end; ++i) {
      breaks.push_back(box_[i].lower);
      breaks.push_back(box_[i].upper);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const std::size_t pieces = breaks.size() - 1;

    // Trailing volume after the last level of the run is identically 1.
    detail::PiecewisePoly trailing;
    trailing.breaks = breaks;
    trailing.coef.assign(pieces, std::vector<double>{1.0});
    trailing.tail = 1.0;

    run.cumulative.resize(m);
    for (int i = m - 1; i >= 0; --i) {
      const Bounds& b = box_[run.begin + i];
      detail::PiecewisePoly cdf = trailing.antiderivative();
      const double at_lower = cdf(b.lower);
      const double at_upper = cdf(b.upper);

      detail::PiecewisePoly next;
      next.breaks = breaks;
      next.coef.resize(pieces);
      for (std::size_t j = 0; j < pieces; ++j) {
        if (breaks[j + 1] <= b.lower) {
          next.coef[j] = {0.0};
        } else if (breaks[j] >= b.upper) {
          next.coef[j] = {at_upper - at_lower};
        } else {
          next.coef[j] = cdf.coef[j];
          next.coef[j][0] -= at_lower;
        }
      }
      next.tail = at_upper - at_lower;
      run.cumulative[i] = std::move(cdf);
      trailing = std::move(next);
    }
    volume_ *= trailing.tail;
    runs_.push_back(std::move(run));
  }
  if (!(volume_ > 0)) throw std::domain_error("ordered mark region has zero volume");
}

std::vector<double> OrderedBoxSampler::sample(Rng& rng) const {
  std::vector<double> out(box_.size());
  for (std::size_t k = 0; k < box_.size(); ++k) out[k] = box_[k].lower;
  for (const auto& run : runs_) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < run.end - run.begin; ++i) {
      const Bounds& b = box_[run.begin + i];
      const auto& cdf = run.cumulative[i];
      const double lo = b.lower;
      const double hi = std::min(b.upper, prev);
      const double c_lo = cdf(lo);
      const double mass = cdf(hi) - c_lo;
      double s;
      if (!(mass > 0) || !(hi > lo)) {
        s = rng.uniform(lo, std::max(lo, hi));
      } else {
        const double target = c_lo + rng.uniform() * mass;
        double a = lo, z = hi;
        for (int it = 0; it < 100 && z - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
          const double mid = 0.5 * (a + z);
          if (cdf(mid) < target) a = mid; else z = mid;
        }
        s = 0.5 * (a + z);
      }
      out[run.begin + i] = s;
      prev = s;
    }
  }
  return out;
}

std::vector<double> sample_ordered_box(std::span<const Bounds> box, Rng& rng,
                                       MarkDrawStats* stats, std::size_t max_rejections) {
  const std::vector<Bounds> b = propagate(box);
  const std::size_t K = b.size();
  std::vector<double> d(K);
  bool any_free = false;
  for (std::size_t k = 0; k < K; ++k) {
    d[k] = b[k].lower;
    any_free = any_free || !b[k].degenerate();
  }
  if (!any_free) return d;

  for (std::size_t attempt = 0; attempt < max_rejections; ++attempt) {
    for (std::size_t k = 0; k < K; ++k) {
      d[k] = b[k].degenerate() ? b[k].lower : rng.uniform(b[k].lower, b[k].upper);
    }
    bool ordered = true;
    for (std::size_t k = 1; k < K && ordered; ++k) ordered = d[k] <= d[k - 1];
    if (ordered) return d;
    if (stats) ++stats->rejections;
  }
  if (stats) stats->used_fallback = true;
  return OrderedBoxSampler(b).sample(rng);
}

std::vector<double> sample_mark_vector(const Configuration& config,
                                       std::span<const double> location, Rng& rng,
                                       PointId exclude, MarkDrawStats* stats,
                                       std::size_t max_rejections) {
  const auto box = config.cross_bounds(location, exclude);
  return sample_ordered_box(box, rng, stats, max_rejections);
}

}  // namespace monoord
