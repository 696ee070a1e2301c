#pragma once

// Marked point process configurations over the union of covariate subspaces,
// and the monotone piecewise-constant surfaces they generate.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace monoord {

inline constexpr int kDefaultMaxCovariates = 12;
inline constexpr double kConstraintSlack = 1e-12;

/// A non-empty subset of covariates. Bit j of `mask` is set when covariate j
/// (0-based) is active. `volume` is the Lebesgue measure of the subspace.
struct SubspaceId {
  std::uint32_t mask = 0;
  double volume = 1.0;

  bool contains(int j) const { return ((mask >> j) & 1u) != 0; }
  int cardinality() const { return std::popcount(mask); }
  friend bool operator==(const SubspaceId&, const SubspaceId&) = default;
};

/// All 2^p - 1 non-empty subsets, ordered by cardinality and then
/// lexicographically on the sorted covariate indices.
std::vector<SubspaceId> enumerate_subspaces(int p,
                                            int p_max = kDefaultMaxCovariates);

/// "x1+x3" style label with 1-based covariate indices.
std::string subspace_label(const SubspaceId& s);

/// Componentwise partial order: true iff lower[j] <= upper[j] for every j.
bool dominates(std::span<const double> lower, std::span<const double> upper);

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;

  double width() const { return upper - lower; }
  bool degenerate() const { return !(upper > lower); }
};

using PointId = std::uint32_t;
inline constexpr PointId kOriginId = 0;
inline constexpr PointId kNoPoint = std::numeric_limits<PointId>::max();

struct Violation {
  enum class Kind { CrossPoint, WithinPoint, Range, PinnedLevel, Location, Intensity };
  Kind kind;
  PointId first = kNoPoint;
  PointId second = kNoPoint;
  int level = -1;
  std::string message;
};

/// Saved state of a point, enough to undo a removal or a modification
/// exactly (including the point's position in the internal index lists).
struct PointSnapshot {
  PointId id = kNoPoint;
  int subspace = -1;
  std::vector<double> location;
  std::vector<double> marks;
  std::size_t alive_pos = 0;
  std::size_t subspace_pos = 0;
};

/// Point configuration with a fixed origin point.
///
/// Levels are 0-based: level index k corresponds to the survival function of
/// category k + 1. Marks of a point are non-increasing in k, and for every
/// level the marks are non-decreasing along the componentwise order of the
/// completed locations. With `pin_first_level` the first mark of every point
/// equals `range.upper` (the identity-link convention S(1|x) = 1).
///
/// Point ids are stable slots; removed slots are recycled last-in first-out.
class Configuration {
 public:
  Configuration(int covariates, int levels, Bounds range, bool pin_first_level,
                std::vector<SubspaceId> subspaces,
                std::span<const double> origin_marks);

  int dims() const { return p_; }
  int levels() const { return levels_; }
  const Bounds& range() const { return range_; }
  bool first_level_pinned() const { return pin_first_level_; }
  const std::vector<SubspaceId>& subspaces() const { return subspaces_; }
  std::size_t subspace_count() const { return subspaces_.size(); }

  bool alive(PointId id) const;
  /// Subspace index of a point; -1 for the origin.
  int subspace_of(PointId id) const;
  std::span<const double> location(PointId id) const;
  std::span<const double> marks(PointId id) const;

  /// Alive non-origin points in a deterministic order.
  const std::vector<PointId>& points() const { return alive_; }
  const std::vector<PointId>& points_in(int subspace) const;
  std::size_t count_in(int subspace) const { return points_in(subspace).size(); }
  std::size_t total_points() const { return alive_.size(); }

  std::span<const double> intensities() const { return intensity_; }
  void set_intensity(int subspace, double rho);

  PointId add_point(int subspace, std::span<const double> location,
                    std::span<const double> marks);
  /// Removes a point and returns a snapshot that `restore_point` accepts.
  PointSnapshot remove_point(PointId id);
  /// Exact inverse of the most recent `remove_point` of the same id.
  void restore_point(const PointSnapshot& snapshot);
  PointSnapshot snapshot(PointId id) const;

  void set_location(PointId id, std::span<const double> location);
  void set_marks(PointId id, std::span<const double> marks);
  void set_mark(PointId id, int level, double value);

  /// max{ marks[level] of points whose completed location is dominated by x }.
  double evaluate_lambda(std::span<const double> x, int level) const;
  /// All levels at once; `argmax` (optional) receives the generating point.
  void evaluate_levels(std::span<const double> x, std::span<double> out,
                       std::span<PointId> argmax = {}) const;

  /// Cross-point bounds for every level at a location, ignoring `exclude`.
  /// Within-point ordering is not applied; the pinned first level is.
  std::vector<Bounds> cross_bounds(std::span<const double> location,
                                   PointId exclude = kNoPoint) const;
  /// Feasible interval for one mark of an existing point given everything
  /// else. `within_point` adds the neighbouring levels of the same point.
  Bounds level_bounds(PointId id, int level, bool within_point = true) const;
  /// Per-coordinate interval between the nearest coordinate values of all
  /// other points (origin included), clipped to [0,1]. Inactive coordinates
  /// get the degenerate interval [0,0].
  std::vector<Bounds> position_bounds(PointId id) const;

  std::vector<Violation> validate(double slack = kConstraintSlack) const;

 private:
  std::size_t slot_count() const { return subspace_slot_.size(); }
  void check_point(PointId id) const;
  void check_marks(std::span<const double> marks) const;

  int p_;
  int levels_;
  Bounds range_;
  bool pin_first_level_;
  std::vector<SubspaceId> subspaces_;
  std::vector<double> intensity_;

  // Slot storage. subspace_slot_[id] is -1 for the origin, -2 for a free slot.
  std::vector<double> loc_;
  std::vector<double> marks_;
  std::vector<int> subspace_slot_;
  std::vector<PointId> free_;

  std::vector<PointId> alive_;
  std::vector<std::size_t> alive_pos_;
  std::vector<std::vector<PointId>> by_subspace_;
  std::vector<std::size_t> subspace_pos_;
};

/// Evenly spaced starting levels for the origin: equal category
/// probabilities under either link.
std::vector<double> default_origin_marks(int levels, Bounds range, bool logit_scale);

}  // namespace monoord
