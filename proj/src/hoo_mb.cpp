#include "hoover/hoo_mb.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hoover/error.hpp"

namespace hoover {

void HooMbConfig::validate() const {
  require(batch_size >= 1, ErrorCode::kConfig, "batch size must be at least 1");
  require(budget >= batch_size, ErrorCode::kConfig,
          "budget " + std::to_string(budget) + " is smaller than batch size " +
              std::to_string(batch_size));
  require(sigma > 0.0 && std::isfinite(sigma), ErrorCode::kConfig, "sigma must be positive");
  require(nu > 0.0 && std::isfinite(nu), ErrorCode::kConfig, "nu must be positive");
  require(rho > 0.0 && rho < 1.0, ErrorCode::kConfig, "rho must lie in (0, 1)");
}

NodeId select_final_node(const PartitionTree& tree) {
  NodeId best = kNoNode;
  const auto nodes = tree.nodes();
  for (NodeId id = 1; id < nodes.size(); ++id) {
    const TreeNode& n = nodes[id];
    if (n.label.depth != tree.max_depth()) continue;
    if (best == kNoNode || n.b_value > nodes[best].b_value ||
        (n.b_value == nodes[best].b_value && n.label.index < nodes[best].label.index)) {
      best = id;
    }
  }
  require(best != kNoNode, ErrorCode::kContractViolation, "tree has no inserted nodes");
  return best;
}

HooMbOutcome run_hoo_mb(const Objective& objective, const Region& domain, const HooMbConfig& cfg,
                        const TraceSink& trace, std::optional<PartitionTree>* tree_out) {
  cfg.validate();
  require(objective.dimension() == domain.dimension(), ErrorCode::kConfig,
          "objective dimension does not match the search domain");

  const ObservationRange range = objective.range();
  const BackupParams params{cfg.sigma, cfg.nu, cfg.rho};
  PartitionTree tree(domain, cfg.batch_size);
  Rng rng(cfg.seed);
  std::vector<double> batch(cfg.batch_size);
  std::uint64_t clamped = 0;

  const std::uint64_t batches = batch_count_for(cfg.budget, cfg.batch_size);
  for (std::uint64_t j = 1; j <= batches; ++j) {
    Traversal step = tree.traverse();
    const Point x = representative_point(step.new_region);
    try {
      clamped += objective.observe(x, rng, batch);
    } catch (const Error& e) {
      throw e.with_context("batch " + std::to_string(j));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (!range.contains(batch[k])) {
        fail(ErrorCode::kContractViolation, "batch " + std::to_string(j) + ": observation " +
                                                std::to_string(k) + " outside the declared range");
      }
    }
    const NodeId leaf = tree.insert(step);
    step.path.push_back(leaf);
    tree.update_path(step.path, batch);
    tree.complete_batch();
    tree.backup_all(params);

    if (trace) {
      const double mean = std::accumulate(batch.begin(), batch.end(), 0.0) /
                          static_cast<double>(batch.size());
      trace(TraceRecord{tree.batch_count(), step.new_label, x, mean, tree.max_depth()});
    }
  }

  const NodeId best = select_final_node(tree);
  const TreeNode& node = tree.node(best);
  HooMbOutcome out{
      .best_point = representative_point(node.region),
      .best_label = node.label,
      .best_b_value = node.b_value,
      .tree = {tree.node_count(), tree.max_depth(), tree.batch_count()},
      .queries_used = tree.query_count(),
      .clamped = clamped,
  };
  if (tree_out != nullptr) tree_out->emplace(std::move(tree));
  return out;
}

}  // namespace hoover
