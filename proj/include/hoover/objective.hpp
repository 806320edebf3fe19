#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "hoover/rng.hpp"

namespace hoover {

/// Closed interval that bounds every observation of an objective.
struct ObservationRange {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  /// Any observation bounded in [lo, hi] is (width/2)^2-sub-Gaussian.
  double sigma_bound() const { return 0.5 * width(); }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Noisy black-box objective. Implementations draw randomness only from the
/// stream they are handed and hold no mutable state, so one objective can be
/// observed from several threads at once.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual ObservationRange range() const = 0;

  /// Fills `out` with independent observations at `point`, drawn in order
  /// from `rng`. Returns how many of them were clamped into range().
  virtual std::size_t observe(std::span<const double> point, Rng& rng,
                              std::span<double> out) const = 0;
};

/// Adapts a single-sample callable to Objective.
class FunctionObjective final : public Objective {
 public:
  using Sampler = std::function<double(std::span<const double>, Rng&)>;

  FunctionObjective(std::size_t dimension, ObservationRange range, Sampler sampler)
      : dimension_(dimension), range_(range), sampler_(std::move(sampler)) {}

  std::size_t dimension() const override { return dimension_; }
  ObservationRange range() const override { return range_; }

  std::size_t observe(std::span<const double> point, Rng& rng,
                      std::span<double> out) const override {
    for (double& y : out) y = sampler_(point, rng);
    return 0;
  }

 private:
  std::size_t dimension_;
  ObservationRange range_;
  Sampler sampler_;
};

}  // namespace hoover
