#include "hoover/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hoover/error.hpp"
#include "hoover/model_registry.hpp"

namespace hoover {

NmcModel make_random_motion(const RandomMotionParams& params) {
  require(params.step_sigma > 0.0, ErrorCode::kConfig, "random-motion: step_sigma must be positive");
  require(params.radius > 0.0, ErrorCode::kConfig, "random-motion: radius must be positive");
  NmcModel m;
  m.name = "random-motion";
  m.mode = ModelMode::kVerification;
  m.search_space = Region({1.0, 2.0}, {2.0, 3.0});
  m.time_bound = params.time_bound;
  m.state_dimension = 2;
  const double sigma = params.step_sigma;
  m.transition = [sigma](std::span<const double> x, std::span<const double>, Rng& rng,
                         std::span<double> next) {
    next[0] = x[0] + rng.normal(0.0, sigma);
    next[1] = x[1] + rng.normal(0.0, sigma);
  };
  const double r2 = params.radius * params.radius;
  m.is_unsafe = [r2](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] > r2; };
  return m;
}

double sharp_mean(const SharpParams& params, std::span<const double> x) {
  const double dx = x[0] - 0.5;
  const double dy = x[1] - 0.5;
  return params.p_max * std::exp(-(dx * dx + dy * dy) / params.s);
}

NmcModel make_sharp_conceptual(const SharpParams& params) {
  require(params.s > 0.0, ErrorCode::kConfig, "sharp: s must be positive");
  require(params.p_max > 0.0 && params.p_max <= 1.0, ErrorCode::kConfig, "sharp: p_max must lie in (0, 1]");
  // State (x1, x2, status): 0 undecided, 1 hit, 2 cleared. The first step
  // decides; both outcomes are absorbing.
  NmcModel m;
  m.name = "sharp";
  m.mode = ModelMode::kVerification;
  m.search_space = Region({0.0, 0.0}, {1.0, 1.0});
  m.time_bound = 1;
  m.state_dimension = 3;
  m.initial_state = [](std::span<const double> p, std::span<double> x0) {
    x0[0] = p[0];
    x0[1] = p[1];
    x0[2] = 0.0;
  };
  m.transition = [params](std::span<const double> x, std::span<const double>, Rng& rng,
                          std::span<double> next) {
    next[0] = x[0];
    next[1] = x[1];
    next[2] = x[2] != 0.0 ? x[2] : (rng.bernoulli(sharp_mean(params, x)) ? 1.0 : 2.0);
  };
  m.is_unsafe = [](std::span<const double> x) { return x[2] == 1.0; };
  return m;
}

NmcModel make_sl_platoon(const SlPlatoonParams& params) {
  require(params.num_cars >= 2, ErrorCode::kConfig, "sl-platoon: num_cars must be at least 2");
  require(params.localization_error > 0.0, ErrorCode::kConfig,
          "sl-platoon: localization_error must be positive");
  require(params.dt > 0.0, ErrorCode::kConfig, "sl-platoon: dt must be positive");
  for (const auto& row : params.action_probs) {
    const double total = row[0] + row[1] + row[2];
    require(std::abs(total - 1.0) < 1e-9 && *std::min_element(row.begin(), row.end()) >= 0.0,
            ErrorCode::kConfig, "sl-platoon: action probabilities must form a distribution");
  }
  const auto cars = static_cast<std::size_t>(params.num_cars);
  NmcModel m;
  m.name = "sl-platoon";
  m.mode = ModelMode::kVerification;
  m.search_space = Region(std::vector<double>(cars - 1, -params.localization_error),
                          std::vector<double>(cars - 1, params.localization_error));
  m.time_bound = params.time_bound;
  // State: positions of cars 0..m-1 (car 0 leads), then their speeds.
  m.state_dimension = 2 * cars;
  m.initial_state = [params, cars](std::span<const double> offsets, std::span<double> x0) {
    for (std::size_t j = 0; j < cars; ++j) {
      x0[j] = -static_cast<double>(j) * params.spacing + (j == 0 ? 0.0 : offsets[j - 1]);
      x0[cars + j] = params.initial_speed;
    }
  };
  m.transition = [params, cars](std::span<const double> x, std::span<const double>, Rng& rng,
                                std::span<double> next) {
    for (std::size_t j = 0; j < cars; ++j) {
      std::size_t row = 2;
      if (j > 0) {
        const double gap = x[j - 1] - x[j] - params.car_length;
        row = gap < params.gap_thresholds[0] ? 0 : (gap < params.gap_thresholds[1] ? 1 : 2);
      }
      const auto& probs = params.action_probs[row];
      const double u = rng.uniform();
      const double a = u < probs[0] ? params.accel : (u < probs[0] + probs[1] ? 0.0 : -params.brake);
      const double v = std::clamp(x[cars + j] + a * params.dt, 0.0, params.max_speed);
      next[cars + j] = v;
      next[j] = x[j] + v * params.dt;
    }
  };
  m.is_unsafe = [params, cars](std::span<const double> x) {
    for (std::size_t j = 1; j < cars; ++j) {
      if (x[j - 1] - x[j] - params.car_length <= 0.0) return true;
    }
    return false;
  };
  return m;
}

Eigen::Matrix2d gain_from_point(std::span<const double> beta) {
  Eigen::Matrix2d k;
  k << beta[0], beta[1], beta[2], beta[3];
  return k;
}

double lqr_rollout_cost(const LqrParams& params, const Eigen::Matrix2d& gain,
                        std::span<const double> noise) {
  const auto steps = static_cast<std::size_t>(params.horizon);
  require(noise.empty() || noise.size() == 2 * steps, ErrorCode::kContractViolation,
          "lqr: noise needs two draws per step");
  Eigen::Vector2d x = params.x0;
  double cost = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    const Eigen::Vector2d u = gain * x;
    cost += x.dot(params.Q * x) + u.dot(params.R * u);
    x = params.A * x + params.B * u;
    if (!noise.empty()) x += params.noise_sigma * Eigen::Vector2d(noise[2 * t], noise[2 * t + 1]);
  }
  return cost + x.dot(params.Q * x);
}

NmcModel make_lqr(const LqrParams& params) {
  require(params.horizon >= 1, ErrorCode::kConfig, "lqr: horizon must be at least 1");
  require(params.noise_sigma >= 0.0, ErrorCode::kConfig, "lqr: noise_sigma must be non-negative");
  require(params.gain_lower < params.gain_upper, ErrorCode::kConfig, "lqr: empty gain box");
  require(params.cost_cap > 0.0, ErrorCode::kConfig, "lqr: cost_cap must be positive");
  NmcModel m;
  m.name = "lqr";
  m.mode = ModelMode::kSynthesis;
  m.search_space = Region(std::vector<double>(4, params.gain_lower), std::vector<double>(4, params.gain_upper));
  m.time_bound = params.horizon;
  m.state_dimension = 2;
  m.range = {-params.cost_cap, 0.0};
  m.initial_sampler = [x0 = params.x0](Rng&, std::span<double> out) {
    out[0] = x0[0];
    out[1] = x0[1];
  };
  m.transition = [params](std::span<const double> x, std::span<const double> beta, Rng& rng,
                          std::span<double> next) {
    const Eigen::Vector2d state(x[0], x[1]);
    const Eigen::Vector2d u = gain_from_point(beta) * state;
    // Same draw order as lqr_rollout_cost's noise vector.
    const double w0 = rng.normal();
    const double w1 = rng.normal();
    Eigen::Vector2d n = params.A * state + params.B * u;
    n += params.noise_sigma * Eigen::Vector2d(w0, w1);
    next[0] = n[0];
    next[1] = n[1];
  };
  m.reward = [params](const Trajectory& trace, std::span<const double> beta) {
    const Eigen::Matrix2d k = gain_from_point(beta);
    double cost = 0.0;
    const std::size_t last = trace.length() - 1;
    for (std::size_t t = 0; t <= last; ++t) {
      const auto s = trace.state(t);
      const Eigen::Vector2d x(s[0], s[1]);
      if (!x.allFinite()) return -std::numeric_limits<double>::infinity();
      if (t < last) {
        const Eigen::Vector2d u = k * x;
        cost += x.dot(params.Q * x) + u.dot(params.R * u);
      } else {
        cost += x.dot(params.Q * x);
      }
    }
    return std::isfinite(cost) ? -cost : -std::numeric_limits<double>::infinity();
  };
  return m;
}

void register_benchmarks(ModelRegistry& registry) {
  registry.add("random-motion", [](const ParamBlock& block, std::optional<int> k) {
    ParamReader r("random-motion", block);
    RandomMotionParams p;
    p.step_sigma = r.get("step_sigma", p.step_sigma);
    p.radius = r.get("radius", p.radius);
    r.finish();
    if (k) p.time_bound = *k;
    return make_random_motion(p);
  });
  registry.add("sharp", [](const ParamBlock& block, std::optional<int>) {
    ParamReader r("sharp", block);
    SharpParams p;
    p.s = r.get("s", p.s);
    p.p_max = r.get("p_max", p.p_max);
    r.finish();
    return make_sharp_conceptual(p);
  });
  registry.add("sl-platoon", [](const ParamBlock& block, std::optional<int> k) {
    ParamReader r("sl-platoon", block);
    SlPlatoonParams p;
    p.num_cars = r.get_int("num_cars", p.num_cars);
    p.localization_error = r.get("localization_error", p.localization_error);
    r.finish();
    if (k) p.time_bound = *k;
    return make_sl_platoon(p);
  });
  registry.add("lqr", [](const ParamBlock& block, std::optional<int> k) {
    ParamReader r("lqr", block);
    LqrParams p;
    const bool has_horizon = block.contains("horizon");
    p.horizon = r.get_int("horizon", p.horizon);
    p.noise_sigma = r.get("noise_sigma", p.noise_sigma);
    r.finish();
    if (k) {
      require(!has_horizon || *k == p.horizon, ErrorCode::kConfig,
              "lqr: time bound and lqr.horizon disagree");
      p.horizon = *k;
    }
    return make_lqr(p);
  });
  for (const char* name : {"ml-platoon", "merging", "detect-brake"}) registry.reserve(name);
}

}  // namespace hoover
