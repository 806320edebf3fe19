#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hoover/objective.hpp"
#include "hoover/region.hpp"
#include "hoover/rng.hpp"

namespace hoover {

enum class ModelMode { kVerification, kSynthesis };

const char* to_string(ModelMode mode);

/// States of one execution, stored row-major with a fixed state dimension.
class Trajectory {
 public:
  explicit Trajectory(std::size_t state_dimension) : dim_(state_dimension) {}

  std::size_t state_dimension() const { return dim_; }
  std::size_t length() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::span<const double> state(std::size_t step) const {
    return {data_.data() + step * dim_, dim_};
  }
  void clear() { data_.clear(); }
  std::span<double> append() {
    data_.resize(data_.size() + dim_);
    return {data_.data() + data_.size() - dim_, dim_};
  }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

struct Observation {
  double value = 0.0;
  bool clamped = false;
};

/// Black-box Markov chain with a nondeterministic initial state (verification)
/// or parameter (synthesis). Models are immutable after construction; every
/// simulation owns its random stream.
struct NmcModel {
  using Transition = std::function<void(std::span<const double> state, std::span<const double> param,
                                        Rng& rng, std::span<double> next)>;
  using UnsafePredicate = std::function<bool(std::span<const double> state)>;
  using Reward = std::function<double(const Trajectory& trace, std::span<const double> param)>;
  using InitialSampler = std::function<void(Rng& rng, std::span<double> x0)>;
  using InitialStateMap = std::function<void(std::span<const double> point, std::span<double> x0)>;

  std::string name;
  ModelMode mode = ModelMode::kVerification;
  Region search_space{{0.0}, {1.0}};
  int time_bound = 1;  // k
  std::size_t state_dimension = 1;
  Transition transition;
  ObservationRange range{0.0, 1.0};

  // Verification mode.
  UnsafePredicate is_unsafe;
  // Maps a point of the search space to an initial state; identity when empty.
  InitialStateMap initial_state;

  // Synthesis mode.
  Reward reward;
  InitialSampler initial_sampler;

  void validate() const;
};

/// One k-step execution from the initial state of `x0`: 1 if it visits the
/// unsafe set at any step 0..k, else 0.
Observation simulate_hit(const NmcModel& model, std::span<const double> x0, Rng& rng);

/// One k-step rollout under parameter `beta`; reward clamped into range.
Observation simulate_reward(const NmcModel& model, std::span<const double> beta, Rng& rng);

/// `out.size()` independent observations at `point`, drawn in order from one
/// stream. Returns the number of clamped observations.
std::size_t batch_observe(const NmcModel& model, std::span<const double> point, Rng& rng,
                          std::span<double> out);

std::vector<double> batch_observe(const NmcModel& model, std::span<const double> point,
                                  std::size_t batch_size, Rng& rng);

/// Objective view of a model for the optimizer.
class ModelObjective final : public Objective {
 public:
  explicit ModelObjective(const NmcModel& model);

  std::size_t dimension() const override { return model_->search_space.dimension(); }
  ObservationRange range() const override { return model_->range; }
  std::size_t observe(std::span<const double> point, Rng& rng,
                      std::span<double> out) const override {
    return batch_observe(*model_, point, rng, out);
  }

  const NmcModel& model() const { return *model_; }

 private:
  const NmcModel* model_;
};

}  // namespace hoover
