#include "hoover/nmc_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoover/error.hpp"

namespace hoover {

const char* to_string(ModelMode mode) {
  return mode == ModelMode::kVerification ? "verification" : "synthesis";
}

void NmcModel::validate() const {
  require(time_bound >= 1, ErrorCode::kConfig, name + ": time bound must be at least 1");
  require(state_dimension >= 1, ErrorCode::kConfig, name + ": state dimension must be positive");
  require(static_cast<bool>(transition), ErrorCode::kConfig, name + ": missing transition");
  require(range.lo < range.hi, ErrorCode::kConfig, name + ": empty observation range");
  if (mode == ModelMode::kVerification) {
    require(static_cast<bool>(is_unsafe), ErrorCode::kConfig, name + ": missing unsafe predicate");
    require(range.lo == 0.0 && range.hi == 1.0, ErrorCode::kConfig,
            name + ": verification observations must range over [0, 1]");
    require(initial_state || search_space.dimension() == state_dimension, ErrorCode::kConfig,
            name + ": search space and state dimensions differ without an initial-state map");
  } else {
    require(static_cast<bool>(reward), ErrorCode::kConfig, name + ": missing reward");
    require(static_cast<bool>(initial_sampler), ErrorCode::kConfig,
            name + ": missing initial-state sampler");
  }
}

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Observation simulate_hit(const NmcModel& model, std::span<const double> x0, Rng& rng) {
  require(model.mode == ModelMode::kVerification, ErrorCode::kContractViolation,
          model.name + ": hit simulation needs a verification model");
  std::vector<double> state(model.state_dimension);
  std::vector<double> next(model.state_dimension);
  if (model.initial_state) {
    model.initial_state(x0, state);
  } else {
    std::copy(x0.begin(), x0.end(), state.begin());
  }
  if (model.is_unsafe(state)) return {1.0, false};
  for (int step = 1; step <= model.time_bound; ++step) {
    model.transition(state, {}, rng, next);
    if (!all_finite(next)) {
      fail(ErrorCode::kSimulationFault, model.name + ": non-finite state at step " + std::to_string(step));
    }
    state.swap(next);
    if (model.is_unsafe(state)) return {1.0, false};
  }
  return {0.0, false};
}

Observation simulate_reward(const NmcModel& model, std::span<const double> beta, Rng& rng) {
  require(model.mode == ModelMode::kSynthesis, ErrorCode::kContractViolation,
          model.name + ": reward simulation needs a synthesis model");
  Trajectory trace(model.state_dimension);
  model.initial_sampler(rng, trace.append());
  for (int step = 1; step <= model.time_bound; ++step) {
    const auto prev = trace.length() - 1;
    auto next = trace.append();
    model.transition(trace.state(prev), beta, rng, next);
  }
  const double r = model.reward(trace, beta);
  if (std::isnan(r)) fail(ErrorCode::kSimulationFault, model.name + ": reward is NaN");
  const double clamped = std::clamp(r, model.range.lo, model.range.hi);
  return {clamped, clamped != r};
}

std::size_t batch_observe(const NmcModel& model, std::span<const double> point, Rng& rng,
                          std::span<double> out) {
  std::size_t clamped = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    try {
      const Observation obs = model.mode == ModelMode::kVerification
                                  ? simulate_hit(model, point, rng)
                                  : simulate_reward(model, point, rng);
      out[j] = obs.value;
      clamped += obs.clamped ? 1 : 0;
    } catch (const Error& e) {
      throw e.with_context("sample " + std::to_string(j));
    }
  }
  return clamped;
}

std::vector<double> batch_observe(const NmcModel& model, std::span<const double> point,
                                  std::size_t batch_size, Rng& rng) {
  std::vector<double> out(batch_size);
  batch_observe(model, point, rng, out);
  return out;
}

ModelObjective::ModelObjective(const NmcModel& model) : model_(&model) { model.validate(); }

}  // namespace hoover
