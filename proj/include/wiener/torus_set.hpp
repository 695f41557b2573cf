#pragma once

// Symmetric subsets of the torus, represented as finite unions of open
// intervals inside the fundamental domain [-1/2, 1/2].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wiener/grid.hpp"

namespace wiener {

struct Interval {
  double lo;
  double hi;

  double length() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Mirror tolerance for symmetry verification.
inline constexpr double kSymmetryTolerance = 1e-15;

class SymmetricSet {
 public:
  /// Validates, sorts and merges. Overlapping or touching intervals are
  /// merged; a set that is not symmetric about 0 is rejected, never repaired.
  static SymmetricSet from_intervals(std::span<const Interval> input) {
    if (input.empty()) throw std::invalid_argument("make_set: empty interval list");
    std::vector<Interval> iv(input.begin(), input.end());
    for (const Interval& i : iv) {
      if (!(i.lo < i.hi)) throw std::invalid_argument("make_set: interval with empty interior");
      if (i.lo < -0.5 || i.hi > 0.5)
        throw std::invalid_argument("make_set: interval outside the fundamental domain [-1/2, 1/2]");
    }
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& i : iv) {
      if (!merged.empty() && i.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, i.hi);
      } else {
        merged.push_back(i);
      }
    }
    const std::size_t n = merged.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Interval& a = merged[i];
      const Interval& b = merged[n - 1 - i];
      if (std::abs(a.lo + b.hi) > kSymmetryTolerance || std::abs(a.hi + b.lo) > kSymmetryTolerance)
        throw std::invalid_argument("make_set: set is not symmetric about 0");
    }
    // Snap the left half onto the exact mirror of the right half.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = n - 1 - i;
      if (i < j) {
        merged[i] = {-merged[j].hi, -merged[j].lo};
      } else if (i == j) {
        merged[i].lo = -merged[i].hi;
      }
    }
    SymmetricSet s;
    s.intervals_ = std::move(merged);
    return s;
  }

  /// The whole torus, (-1/2, 1/2) with the wrap point included.
  static SymmetricSet torus() {
    const Interval all{-0.5, 0.5};
    return from_intervals(std::span<const Interval>(&all, 1));
  }

  std::span<const Interval> intervals() const { return intervals_; }

  double measure() const {
    double s = 0.0;
    for (const Interval& i : intervals_) s += i.length();
    return s;
  }

  bool is_torus() const { return intervals_.size() == 1 && intervals_[0].lo == -0.5 && intervals_[0].hi == 0.5; }

  /// True if the set reaches across the point 1/2 = -1/2 of the torus.
  bool wraps() const { return !intervals_.empty() && intervals_.back().hi == 0.5; }

  /// Membership for t in [-1/2, 1/2). Open intervals; the wrap point -1/2 is
  /// inside exactly when the set reaches 1/2 from both sides.
  bool contains(double t) const {
    if (t == -0.5) return wraps();
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](double v, const Interval& i) { return v < i.hi; });
    return it != intervals_.end() && it->lo < t;
  }

  /// True if the probe interval lies inside a single interval of the set.
  bool contains_interval(const Interval& probe) const {
    for (const Interval& i : intervals_)
      if (i.lo <= probe.lo && probe.hi <= i.hi) return true;
    return false;
  }

  friend bool operator==(const SymmetricSet&, const SymmetricSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

inline SymmetricSet make_set(std::span<const Interval> intervals) { return SymmetricSet::from_intervals(intervals); }

inline SymmetricSet make_set(std::initializer_list<Interval> intervals) {
  return SymmetricSet::from_intervals(std::span<const Interval>(intervals.begin(), intervals.size()));
}

/// Complement inside [-1/2, 1/2], up to the null set of endpoints.
inline SymmetricSet complement(const SymmetricSet& e) {
  if (e.measure() >= 1.0) throw std::invalid_argument("complement: set has full measure");
  std::vector<Interval> out;
  double cursor = -0.5;
  for (const Interval& i : e.intervals()) {
    if (i.lo > cursor) out.push_back({cursor, i.lo});
    cursor = i.hi;
  }
  if (cursor < 0.5) out.push_back({cursor, 0.5});
  return make_set(out);
}

/// Torus minus the arcs of radius l^-radius_exponent around every irreducible
/// k/l with k != 0 and min_denominator < l <= max_denominator.
inline SymmetricSet diophantine_set(std::int64_t min_denominator, std::int64_t max_denominator,
                                    int radius_exponent) {
  if (min_denominator < 1) throw std::invalid_argument("diophantine_set: L must be >= 1");
  if (max_denominator <= min_denominator) throw std::invalid_argument("diophantine_set: need l_max > L");
  if (radius_exponent < 2) throw std::invalid_argument("diophantine_set: radius exponent must be >= 2");

  std::vector<Interval> removed;
  for (std::int64_t l = min_denominator + 1; l <= max_denominator; ++l) {
    const double radius = 1.0 / std::pow(static_cast<double>(l), radius_exponent);
    for (std::int64_t k = 1; k < l; ++k) {
      if (std::gcd(k, l) != 1) continue;
      // k/l reduced into [-1/2, 1/2); negatives built as exact mirrors.
      double c;
      if (2 * k < l) {
        c = static_cast<double>(k) / static_cast<double>(l);
      } else if (2 * k > l) {
        c = -(static_cast<double>(l - k) / static_cast<double>(l));
      } else {
        c = 0.5;
      }
      double lo = c - radius, hi = c + radius;
      if (c == 0.5) {
        removed.push_back({0.5 - radius, 0.5});
        removed.push_back({-0.5, -0.5 + radius});
        continue;
      }
      if (lo < -0.5) {
        removed.push_back({lo + 1.0, 0.5});
        lo = -0.5;
      }
      if (hi > 0.5) {
        removed.push_back({-0.5, hi - 1.0});
        hi = 0.5;
      }
      removed.push_back({lo, hi});
    }
  }
  std::sort(removed.begin(), removed.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> kept;
  double cursor = -0.5;
  for (const Interval& r : removed) {
    if (r.lo > cursor) kept.push_back({cursor, r.lo});
    cursor = std::max(cursor, r.hi);
  }
  if (cursor < 0.5) kept.push_back({cursor, 0.5});
  if (kept.empty()) throw std::domain_error("diophantine_set: removed arcs cover the torus (degenerate set)");
  return make_set(kept);
}

/// Membership of t_j = j/M (mapped into [-1/2, 1/2)).
inline std::vector<bool> indicator_on_grid(const SymmetricSet& e, std::int64_t grid_size) {
  if (grid_size < 1) throw std::invalid_argument("indicator_on_grid: M must be >= 1");
  std::vector<bool> out(static_cast<std::size_t>(grid_size));
  for (std::int64_t j = 0; j < grid_size; ++j) out[static_cast<std::size_t>(j)] = e.contains(grid_point(j, grid_size));
  return out;
}

/// Length of the overlap of grid cell j (centered at t_j, width 1/M) with E,
/// in units of the cell width: 1 for interior cells, 0 outside, fractional at
/// endpoints. Cells at the wrap point count both sides.
inline double cell_overlap(const SymmetricSet& e, std::int64_t j, std::int64_t grid_size) {
  const double m = static_cast<double>(grid_size);
  const std::int64_t s = (2 * j < grid_size) ? j : j - grid_size;
  auto overlap_at = [&](double center) {
    const double a = center - 0.5, b = center + 0.5;
    const auto iv = e.intervals();
    // First interval whose right end (in cell units) exceeds the cell start.
    auto it = std::upper_bound(iv.begin(), iv.end(), a, [m](double v, const Interval& i) { return v < i.hi * m; });
    double sum = 0.0;
    for (; it != iv.end() && it->lo * m < b; ++it) {
      const double lo = std::max(a, it->lo * m), hi = std::min(b, it->hi * m);
      if (hi > lo) sum += hi - lo;
    }
    return sum;
  };
  double w = overlap_at(static_cast<double>(s));
  if (2 * std::abs(s) + 2 >= grid_size) {
    w += overlap_at(static_cast<double>(s) + m);
    w += overlap_at(static_cast<double>(s) - m);
  }
  return w;
}

}  // namespace wiener
