#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "hoover/objective.hpp"
#include "hoover/partition_tree.hpp"
#include "hoover/region.hpp"

namespace hoover {

struct HooMbConfig {
  std::uint64_t budget = 1000;  // N, simulator calls
  std::size_t batch_size = 100;  // b
  double sigma = 0.5;
  double nu = 1.0;
  double rho = 0.5;
  std::uint64_t seed = 0;  // key of the instance's observation stream

  void validate() const;
};

/// Number of batches HOO-MB runs for budget N and batch size b: floor((N-1)/b) + 1.
constexpr std::uint64_t batch_count_for(std::uint64_t budget, std::uint64_t batch_size) {
  return (budget - 1) / batch_size + 1;
}

struct TreeStats {
  std::size_t nodes = 0;
  int max_depth = 0;
  std::uint64_t batches = 0;
};

struct HooMbOutcome {
  Point best_point;
  NodeLabel best_label;
  double best_b_value = 0.0;
  TreeStats tree;
  std::uint64_t queries_used = 0;
  std::uint64_t clamped = 0;
};

struct TraceRecord {
  std::uint64_t batch = 0;  // m after the batch
  NodeLabel label;
  Point point;
  double batch_mean = 0.0;
  int max_depth = 0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Runs HOO-MB to completion. When `tree_out` is non-null the final tree is
/// moved into it.
HooMbOutcome run_hoo_mb(const Objective& objective, const Region& domain, const HooMbConfig& cfg,
                        const TraceSink& trace = {}, std::optional<PartitionTree>* tree_out = nullptr);

/// Deepest inserted node with the largest B-value, lowest index on ties.
NodeId select_final_node(const PartitionTree& tree);

/// S_N = f* - f(x_N).
inline double simple_regret(double true_optimum, double achieved) { return true_optimum - achieved; }

}  // namespace hoover
