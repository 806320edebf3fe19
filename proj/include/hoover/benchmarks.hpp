#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "hoover/nmc_model.hpp"

namespace hoover {

class ModelRegistry;

// Particle on the plane with Gaussian increments. Initial set [1,2]x[2,3],
// unsafe outside the disc of `radius`.
struct RandomMotionParams {
  double step_sigma = 0.1;
  double radius = 4.0;
  int time_bound = 10;
};

NmcModel make_random_motion(const RandomMotionParams& params);

// Bernoulli hit with mean p_max * exp(-((x1-0.5)^2 + (x2-0.5)^2) / s) on
// [0,1]^2. Realized as a one-step chain with an absorbing decided state, so
// the time bound has no effect.
struct SharpParams {
  double s = 0.1;
  double p_max = 0.3;
};

NmcModel make_sharp_conceptual(const SharpParams& params);
double sharp_mean(const SharpParams& params, std::span<const double> x);

// Single-lane platoon. Action probabilities (accelerate, cruise, brake) are
// looked up from the gap to the predecessor; the leader uses the free-road row.
// All numeric values below are chosen for this project.
struct SlPlatoonParams {
  int num_cars = 3;
  int time_bound = 10;
  double dt = 0.5;               // s
  double car_length = 4.0;       // m
  double spacing = 12.0;         // nominal front-to-front distance, m
  double initial_speed = 15.0;   // m/s
  double max_speed = 30.0;       // m/s
  double accel = 2.0;            // m/s^2
  double brake = 4.0;            // m/s^2, magnitude
  double localization_error = 2.0;  // half-width of the position box, m
  std::array<double, 2> gap_thresholds{4.0, 10.0};  // m
  // Rows: gap < t0, t0 <= gap < t1, gap >= t1 (free road).
  std::array<std::array<double, 3>, 3> action_probs{{
      {0.05, 0.25, 0.70},
      {0.25, 0.50, 0.25},
      {0.45, 0.45, 0.10},
  }};
};

NmcModel make_sl_platoon(const SlPlatoonParams& params);

// x_{t+1} = A x_t + B u_t + w_t with u_t = K x_t; the observation is the
// negated quadratic cost of one rollout. The parameter is K flattened
// row-major.
struct LqrParams {
  Eigen::Matrix2d A = (Eigen::Matrix2d() << 1.0, 0.1, 0.0, 1.0).finished();
  Eigen::Matrix2d B = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d Q = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d R = Eigen::Matrix2d::Identity();
  Eigen::Vector2d x0{1.0, 1.0};
  int horizon = 20;
  double noise_sigma = 0.01;
  double gain_lower = -1.5;
  double gain_upper = 0.5;
  double cost_cap = 1000.0;  // observations are clamped into [-cost_cap, 0]
};

NmcModel make_lqr(const LqrParams& params);

/// Cost of one rollout; `noise` supplies w_t for t = 0..T-1 (2T draws), or
/// is empty for the noiseless cost.
double lqr_rollout_cost(const LqrParams& params, const Eigen::Matrix2d& gain,
                        std::span<const double> noise);

Eigen::Matrix2d gain_from_point(std::span<const double> beta);

/// Installs random-motion, sharp, sl-platoon and lqr, and reserves the names
/// of the multi-lane, merging and detect-brake scenarios.
void register_benchmarks(ModelRegistry& registry);

}  // namespace hoover
