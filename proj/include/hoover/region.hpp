#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hoover {

using Point = std::vector<double>;

/// Axis-aligned box [lower, upper] with strictly positive width in every
/// dimension.
class Region {
 public:
  Region(std::vector<double> lower, std::vector<double> upper);

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  double width(std::size_t d) const { return upper_[d] - lower_[d]; }
  double volume() const;

  /// Closed-box membership; false on dimension mismatch.
  bool contains(std::span<const double> point) const;

  /// Index of the widest dimension, lowest index on ties.
  std::size_t widest_dimension() const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Bisects the widest dimension at its midpoint. Throws kDegenerateRegion when
/// the midpoint cannot separate the bounds in floating point.
std::pair<Region, Region> split_region(const Region& region);

/// Componentwise midpoint (lower + upper) / 2.
Point representative_point(const Region& region);

}  // namespace hoover
