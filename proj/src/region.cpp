#include "hoover/region.hpp"

#include <cmath>
#include <string>

#include "hoover/error.hpp"

namespace hoover {

Region::Region(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(!lower_.empty(), ErrorCode::kDegenerateRegion, "region needs at least one dimension");
  require(lower_.size() == upper_.size(), ErrorCode::kDegenerateRegion,
          "region bounds have different lengths");
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    require(std::isfinite(lower_[d]) && std::isfinite(upper_[d]), ErrorCode::kDegenerateRegion,
            "non-finite bound in dimension " + std::to_string(d));
    require(lower_[d] < upper_[d], ErrorCode::kDegenerateRegion,
            "zero or negative width in dimension " + std::to_string(d));
  }
}

double Region::volume() const {
  double v = 1.0;
  for (std::size_t d = 0; d < dimension(); ++d) v *= width(d);
  return v;
}

bool Region::contains(std::span<const double> point) const {
  if (point.size() != dimension()) return false;
  for (std::size_t d = 0; d < dimension(); ++d) {
    if (!(point[d] >= lower_[d] && point[d] <= upper_[d])) return false;
  }
  return true;
}

std::size_t Region::widest_dimension() const {
  std::size_t best = 0;
  for (std::size_t d = 1; d < dimension(); ++d) {
    if (width(d) > width(best)) best = d;
  }
  return best;
}

std::pair<Region, Region> split_region(const Region& region) {
  const std::size_t d = region.widest_dimension();
  const double lo = region.lower()[d];
  const double hi = region.upper()[d];
  const double mid = 0.5 * (lo + hi);
  if (!(lo < mid && mid < hi)) {
    fail(ErrorCode::kDegenerateRegion,
         "cannot bisect dimension " + std::to_string(d) + ": width below floating-point resolution");
  }
  auto left_upper = region.upper();
  left_upper[d] = mid;
  auto right_lower = region.lower();
  right_lower[d] = mid;
  return {Region(region.lower(), std::move(left_upper)),
          Region(std::move(right_lower), region.upper())};
}

Point representative_point(const Region& region) {
  Point p(region.dimension());
  for (std::size_t d = 0; d < p.size(); ++d) {
    p[d] = 0.5 * (region.lower()[d] + region.upper()[d]);
  }
  return p;
}

}  // namespace hoover
