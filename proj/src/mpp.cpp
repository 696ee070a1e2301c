#include "monoord/mpp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace monoord {

std::vector<SubspaceId> enumerate_subspaces(int p, int p_max) {
  if (p < 1 || p > p_max || p > 31) {
    throw std::invalid_argument("covariate count " + std::to_string(p) +
                                " outside [1, " + std::to_string(p_max) + "]");
  }
  std::vector<SubspaceId> out;
  out.reserve((std::size_t{1} << p) - 1);
  const std::uint32_t full = (std::uint32_t{1} << p) - 1;
  for (int card = 1; card <= p; ++card) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m <= full; ++m) {
      if (std::popcount(m) == card) masks.push_back(m);
    }
    // Lexicographic on sorted index lists: compare the index sequences.
    auto indices = [](std::uint32_t m) {
      std::vector<int> idx;
      for (int j = 0; j < 32; ++j)
        if ((m >> j) & 1u) idx.push_back(j);
      return idx;
    };
    std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
      return indices(a) < indices(b);
    });
    for (auto m : masks) out.push_back(SubspaceId{m, 1.0});
  }
  return out;
}

std::string subspace_label(const SubspaceId& s) {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < 32; ++j) {
    if (!s.contains(j)) continue;
    if (!first) os << '+';
    os << 'x' << (j + 1);
    first = false;
  }
  return os.str();
}

bool dominates(std::span<const double> lower, std::span<const double> upper) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("dominates: location length mismatch");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) return false;
  }
  return true;
}

namespace {

inline bool dominated_by(const double* lower, const double* upper, int p) {
  for (int j = 0; j < p; ++j) {
    if (lower[j] > upper[j]) return false;
  }
  return true;
}

}  // namespace

Configuration::Configuration(int covariates, int levels, Bounds range,
                             bool pin_first_level,
                             std::vector<SubspaceId> subspaces,
                             std::span<const double> origin_marks)
    : p_(covariates),
      levels_(levels),
      range_(range),
      pin_first_level_(pin_first_level),
      subspaces_(std::move(subspaces)) {
  if (p_ < 1) throw std::invalid_argument("Configuration: need at least one covariate");
  if (levels_ < 2) throw std::invalid_argument("Configuration: need at least two levels");
  if (!(range_.upper > range_.lower)) {
    throw std::invalid_argument("Configuration: empty level range");
  }
  if (subspaces_.empty()) throw std::invalid_argument("Configuration: no subspaces");
  for (const auto& s : subspaces_) {
    if (s.mask == 0 || (s.mask >> p_) != 0 || !(s.volume > 0)) {
      throw std::invalid_argument("Configuration: invalid subspace");
    }
  }
  if (static_cast<int>(origin_marks.size()) != levels_) {
    throw std::invalid_argument("Configuration: origin mark count mismatch");
  }
  check_marks(origin_marks);
  intensity_.assign(subspaces_.size(), 1.0);
  by_subspace_.resize(subspaces_.size());

  loc_.assign(p_, 0.0);
  marks_.assign(origin_marks.begin(), origin_marks.end());
  subspace_slot_.push_back(-1);
  alive_pos_.push_back(0);
  subspace_pos_.push_back(0);
}

void Configuration::check_marks(std::span<const double> marks) const {
  if (static_cast<int>(marks.size()) != levels_) {
    throw std::invalid_argument("mark vector has wrong length");
  }
  for (double m : marks) {
    if (!std::isfinite(m)) throw std::invalid_argument("non-finite mark");
  }
}

bool Configuration::alive(PointId id) const {
  return id < slot_count() && subspace_slot_[id] != -2;
}

void Configuration::check_point(PointId id) const {
  if (!alive(id)) {
    throw std::out_of_range("point " + std::to_string(id) + " not in configuration");
  }
}

int Configuration::subspace_of(PointId id) const {
  check_point(id);
  return subspace_slot_[id];
}

std::span<const double> Configuration::location(PointId id) const {
  check_point(id);
  return {loc_.data() + std::size_t(id) * p_, std::size_t(p_)};
}

std::span<const double> Configuration::marks(PointId id) const {
  check_point(id);
  return {marks_.data() + std::size_t(id) * levels_, std::size_t(levels_)};
}

const std::vector<PointId>& Configuration::points_in(int subspace) const {
  if (subspace < 0 || subspace >= static_cast<int>(subspaces_.size())) {
    throw std::out_of_range("subspace index out of range");
  }
  return by_subspace_[subspace];
}

void Configuration::set_intensity(int subspace, double rho) {
  if (subspace < 0 || subspace >= static_cast<int>(subspaces_.size())) {
    throw std::out_of_range("subspace index out of range");
  }
  if (!(rho >= 0.0)) throw std::invalid_argument("intensity must be non-negative");
  intensity_[subspace] = rho;
}

PointId Configuration::add_point(int subspace, std::span<const double> location,
                                 std::span<const double> marks) {
  if (subspace < 0 || subspace >= static_cast<int>(subspaces_.size())) {
    throw std::out_of_range("subspace index out of range");
  }
  if (static_cast<int>(location.size()) != p_) {
    throw std::invalid_argument("location has wrong length");
  }
  check_marks(marks);
  PointId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<PointId>(slot_count());
    loc_.resize(loc_.size() + p_);
    marks_.resize(marks_.size() + levels_);
    subspace_slot_.push_back(-2);
    alive_pos_.push_back(0);
    subspace_pos_.push_back(0);
  }
  const auto& sub = subspaces_[subspace];
  for (int j = 0; j < p_; ++j) {
    loc_[std::size_t(id) * p_ + j] = sub.contains(j) ? location[j] : 0.0;
  }
  std::copy(marks.begin(), marks.end(), marks_.begin() + std::size_t(id) * levels_);
  subspace_slot_[id] = subspace;
  alive_pos_[id] = alive_.size();
  alive_.push_back(id);
  subspace_pos_[id] = by_subspace_[subspace].size();
  by_subspace_[subspace].push_back(id);
  return id;
}

PointSnapshot Configuration::snapshot(PointId id) const {
  check_point(id);
  PointSnapshot s;
  s.id = id;
  s.subspace = subspace_slot_[id];
  auto l = location(id);
  auto m = marks(id);
  s.location.assign(l.begin(), l.end());
  s.marks.assign(m.begin(), m.end());
  s.alive_pos = alive_pos_[id];
  s.subspace_pos = subspace_pos_[id];
  return s;
}

PointSnapshot Configuration::remove_point(PointId id) {
  if (id == kOriginId) throw std::invalid_argument("the origin cannot be removed");
  PointSnapshot s = snapshot(id);

  auto swap_remove = [](std::vector<PointId>& list, std::vector<std::size_t>& pos,
                        std::size_t at) {
    PointId last = list.back();
    list[at] = last;
    pos[last] = at;
    list.pop_back();
  };
  swap_remove(alive_, alive_pos_, s.alive_pos);
  swap_remove(by_subspace_[s.subspace], subspace_pos_, s.subspace_pos);
  subspace_slot_[id] = -2;
  free_.push_back(id);
  return s;
}

void Configuration::restore_point(const PointSnapshot& s) {
  if (s.id >= slot_count() || subspace_slot_[s.id] != -2) {
    throw std::invalid_argument("restore_point: slot is not free");
  }
  auto it = std::find(free_.rbegin(), free_.rend(), s.id);
  free_.erase(std::next(it).base());

  auto unswap = [](std::vector<PointId>& list, std::vector<std::size_t>& pos,
                   std::size_t at, PointId id) {
    if (at > list.size()) throw std::logic_error("restore_point: stale snapshot");
    if (at == list.size()) {
      list.push_back(id);
    } else {
      PointId moved = list[at];
      list.push_back(moved);
      pos[moved] = list.size() - 1;
      list[at] = id;
    }
    pos[id] = at;
  };
  unswap(alive_, alive_pos_, s.alive_pos, s.id);
  unswap(by_subspace_[s.subspace], subspace_pos_, s.subspace_pos, s.id);
  subspace_slot_[s.id] = s.subspace;
  std::copy(s.location.begin(), s.location.end(), loc_.begin() + std::size_t(s.id) * p_);
  std::copy(s.marks.begin(), s.marks.end(), marks_.begin() + std::size_t(s.id) * levels_);
}

void Configuration::set_location(PointId id, std::span<const double> location) {
  check_point(id);
  if (id == kOriginId) throw std::invalid_argument("the origin cannot move");
  if (static_cast<int>(location.size()) != p_) {
    throw std::invalid_argument("location has wrong length");
  }
  const auto& sub = subspaces_[subspace_slot_[id]];
  for (int j = 0; j < p_; ++j) {
    loc_[std::size_t(id) * p_ + j] = sub.contains(j) ? location[j] : 0.0;
  }
}

void Configuration::set_marks(PointId id, std::span<const double> marks) {
  check_point(id);
  check_marks(marks);
  std::copy(marks.begin(), marks.end(), marks_.begin() + std::size_t(id) * levels_);
}

void Configuration::set_mark(PointId id, int level, double value) {
  check_point(id);
  if (level < 0 || level >= levels_) throw std::out_of_range("level out of range");
  marks_[std::size_t(id) * levels_ + level] = value;
}

double Configuration::evaluate_lambda(std::span<const double> x, int level) const {
  if (static_cast<int>(x.size()) != p_) throw std::invalid_argument("x has wrong length");
  if (level < 0 || level >= levels_) throw std::out_of_range("level out of range");
  double best = marks_[level];  // origin
  for (PointId id : alive_) {
    const double m = marks_[std::size_t(id) * levels_ + level];
    if (m > best && dominated_by(&loc_[std::size_t(id) * p_], x.data(), p_)) best = m;
  }
  return best;
}

void Configuration::evaluate_levels(std::span<const double> x, std::span<double> out,
                                    std::span<PointId> argmax) const {
  if (static_cast<int>(x.size()) != p_ || static_cast<int>(out.size()) != levels_) {
    throw std::invalid_argument("evaluate_levels: size mismatch");
  }
  const bool track = !argmax.empty();
  for (int k = 0; k < levels_; ++k) {
    out[k] = marks_[k];
    if (track) argmax[k] = kOriginId;
  }
  for (PointId id : alive_) {
    if (!dominated_by(&loc_[std::size_t(id) * p_], x.data(), p_)) continue;
    const double* m = &marks_[std::size_t(id) * levels_];
    for (int k = 0; k < levels_; ++k) {
      if (m[k] > out[k]) {
        out[k] = m[k];
        if (track) argmax[k] = id;
      }
    }
  }
}

std::vector<Bounds> Configuration::cross_bounds(std::span<const double> location,
                                                PointId exclude) const {
  if (static_cast<int>(location.size()) != p_) {
    throw std::invalid_argument("location has wrong length");
  }
  std::vector<Bounds> b(levels_, range_);
  auto visit = [&](PointId id) {
    if (id == exclude) return;
    const double* l = &loc_[std::size_t(id) * p_];
    const double* m = &marks_[std::size_t(id) * levels_];
    if (dominated_by(l, location.data(), p_)) {
      for (int k = 0; k < levels_; ++k) b[k].lower = std::max(b[k].lower, m[k]);
    }
    if (dominated_by(location.data(), l, p_)) {
      for (int k = 0; k < levels_; ++k) b[k].upper = std::min(b[k].upper, m[k]);
    }
  };
  visit(kOriginId);
  for (PointId id : alive_) visit(id);
  if (pin_first_level_) b[0] = Bounds{range_.upper, range_.upper};
  return b;
}

Bounds Configuration::level_bounds(PointId id, int level, bool within_point) const {
  check_point(id);
  if (level < 0 || level >= levels_) throw std::out_of_range("level out of range");
  if (pin_first_level_ && level == 0) return Bounds{range_.upper, range_.upper};
  Bounds b = range_;
  const double* self = &loc_[std::size_t(id) * p_];
  auto visit = [&](PointId other) {
    if (other == id) return;
    const double* l = &loc_[std::size_t(other) * p_];
    const double m = marks_[std::size_t(other) * levels_ + level];
    if (dominated_by(l, self, p_)) b.lower = std::max(b.lower, m);
    if (dominated_by(self, l, p_)) b.upper = std::min(b.upper, m);
  };
  visit(kOriginId);
  for (PointId other : alive_) visit(other);
  if (within_point) {
    const double* m = &marks_[std::size_t(id) * levels_];
    if (level + 1 < levels_) b.lower = std::max(b.lower, m[level + 1]);
    if (level > 0) b.upper = std::min(b.upper, m[level - 1]);
  }
  return b;
}

std::vector<Bounds> Configuration::position_bounds(PointId id) const {
  check_point(id);
  std::vector<Bounds> out(p_, Bounds{0.0, 0.0});
  if (id == kOriginId) return out;
  const auto& sub = subspaces_[subspace_slot_[id]];
  const double* self = &loc_[std::size_t(id) * p_];
  for (int j = 0; j < p_; ++j) {
    if (!sub.contains(j)) continue;
    const double cur = self[j];
    double lo = 0.0, hi = 1.0;  // the origin contributes 0 to every coordinate
    for (PointId other : alive_) {
      if (other == id) continue;
      const double v = loc_[std::size_t(other) * p_ + j];
      if (v <= cur) lo = std::max(lo, v);
      if (v >= cur) hi = std::min(hi, v);
    }
    out[j] = Bounds{lo, hi};
  }
  return out;
}

std::vector<Violation> Configuration::validate(double slack) const {
  std::vector<Violation> out;
  auto push = [&](Violation::Kind kind, PointId a, PointId b, int k, std::string msg) {
    out.push_back(Violation{kind, a, b, k, std::move(msg)});
  };
  std::vector<PointId> all;
  all.reserve(alive_.size() + 1);
  all.push_back(kOriginId);
  all.insert(all.end(), alive_.begin(), alive_.end());

  for (int s = 0; s < static_cast<int>(intensity_.size()); ++s) {
    if (!(intensity_[s] > 0)) {
      push(Violation::Kind::Intensity, kNoPoint, kNoPoint, -1,
           "intensity of subspace " + std::to_string(s) + " is not positive");
    }
  }
  for (PointId id : all) {
    const double* l = &loc_[std::size_t(id) * p_];
    const double* m = &marks_[std::size_t(id) * levels_];
    const int sub = subspace_slot_[id];
    for (int j = 0; j < p_; ++j) {
      const bool active = sub >= 0 && subspaces_[sub].contains(j);
      if ((!active && l[j] != 0.0) || l[j] < 0.0 || l[j] > 1.0) {
        push(Violation::Kind::Location, id, kNoPoint, -1,
             "point " + std::to_string(id) + " coordinate " + std::to_string(j) +
                 " invalid");
      }
    }
    for (int k = 0; k < levels_; ++k) {
      if (m[k] < range_.lower - slack || m[k] > range_.upper + slack) {
        push(Violation::Kind::Range, id, kNoPoint, k,
             "point " + std::to_string(id) + " level " + std::to_string(k) +
                 " outside range");
      }
      if (k + 1 < levels_ && m[k + 1] > m[k] + slack) {
        push(Violation::Kind::WithinPoint, id, kNoPoint, k,
             "point " + std::to_string(id) + " marks increase between levels " +
                 std::to_string(k) + " and " + std::to_string(k + 1));
      }
    }
    if (pin_first_level_ && std::abs(m[0] - range_.upper) > slack) {
      push(Violation::Kind::PinnedLevel, id, kNoPoint, 0,
           "point " + std::to_string(id) + " first level is not pinned");
    }
  }
  for (PointId a : all) {
    const double* la = &loc_[std::size_t(a) * p_];
    const double* ma = &marks_[std::size_t(a) * levels_];
    for (PointId b : all) {
      if (a == b) continue;
      const double* lb = &loc_[std::size_t(b) * p_];
      if (!dominated_by(la, lb, p_)) continue;
      const double* mb = &marks_[std::size_t(b) * levels_];
      for (int k = 0; k < levels_; ++k) {
        if (ma[k] > mb[k] + slack) {
          push(Violation::Kind::CrossPoint, a, b, k,
               "point " + std::to_string(a) + " is dominated by point " +
                   std::to_string(b) + " but has a higher level " + std::to_string(k));
        }
      }
    }
  }
  return out;
}

std::vector<double> default_origin_marks(int levels, Bounds range, bool logit_scale) {
  std::vector<double> m(levels);
  m[0] = range.upper;
  for (int k = 1; k < levels; ++k) {
    const double surv = double(levels - k) / levels;
    double v = logit_scale ? std::log(surv / (1.0 - surv)) : surv;
    m[k] = std::clamp(v, range.lower, range.upper);
  }
  return m;
}

}  // namespace monoord
