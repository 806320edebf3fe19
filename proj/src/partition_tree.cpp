#include "hoover/partition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hoover/error.hpp"

namespace hoover {

PartitionTree::PartitionTree(Region domain, std::size_t batch_size) : batch_size_(batch_size) {
  require(batch_size >= 1, ErrorCode::kConfig, "batch size must be at least 1");
  nodes_.push_back(TreeNode{.label = {0, 1}, .region = std::move(domain)});
}

double PartitionTree::child_b_value(NodeId id, int side) const {
  const NodeId c = nodes_[id].children[side];
  return c == kNoNode ? kInfinity : nodes_[c].b_value;
}

Traversal PartitionTree::traverse() const {
  std::vector<NodeId> path;
  NodeId current = root();
  for (;;) {
    path.push_back(current);
    const int side = child_b_value(current, 1) > child_b_value(current, 0) ? 1 : 0;
    const NodeId next = nodes_[current].children[side];
    if (next == kNoNode) {
      const TreeNode& parent = nodes_[current];
      auto halves = split_region(parent.region);
      return Traversal{
          .path = std::move(path),
          .parent = current,
          .side = side,
          .new_label = parent.label.child(side),
          .new_region = side == 0 ? std::move(halves.first) : std::move(halves.second),
      };
    }
    current = next;
  }
}

NodeId PartitionTree::insert(const Traversal& traversal) {
  require(traversal.parent < nodes_.size(), ErrorCode::kContractViolation,
          "traversal parent is not a node of this tree");
  TreeNode& parent = nodes_[traversal.parent];
  require(parent.children[traversal.side] == kNoNode, ErrorCode::kContractViolation,
          "child slot already occupied");
  require(traversal.new_label.depth < 64, ErrorCode::kContractViolation,
          "tree depth limit of 63 reached");
  const auto id = static_cast<NodeId>(nodes_.size());
  parent.children[traversal.side] = id;
  nodes_.push_back(TreeNode{
      .label = traversal.new_label,
      .region = traversal.new_region,
      .parent = traversal.parent,
  });
  max_depth_ = std::max(max_depth_, traversal.new_label.depth);
  return id;
}

void PartitionTree::update_path(std::span<const NodeId> path, std::span<const double> batch) {
  if (batch.size() != batch_size_) {
    fail(ErrorCode::kContractViolation, "batch has " + std::to_string(batch.size()) +
                                            " observations, expected " + std::to_string(batch_size_));
  }
  const double sum = std::accumulate(batch.begin(), batch.end(), 0.0);
  const auto b = static_cast<double>(batch_size_);
  for (const NodeId id : path) {
    TreeNode& n = nodes_.at(id);
    n.visits += 1;
    n.sample_count += batch_size_;
    const auto count = static_cast<double>(n.sample_count);
    n.emp_mean = (1.0 - b / count) * n.emp_mean + sum / count;
  }
}

double PartitionTree::u_value(double emp_mean, std::uint64_t visits, int depth, std::uint64_t m,
                              std::size_t batch_size, const BackupParams& params) {
  if (visits == 0) return kInfinity;
  const double radius =
      std::sqrt(2.0 * params.sigma * params.sigma * std::log(static_cast<double>(m)) /
                (static_cast<double>(batch_size) * static_cast<double>(visits)));
  return emp_mean + radius + params.nu * std::pow(params.rho, depth);
}

void PartitionTree::backup_all(const BackupParams& params) {
  require(batch_count_ >= 1, ErrorCode::kContractViolation, "backup needs at least one batch");
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    TreeNode& n = *it;
    n.u_value = u_value(n.emp_mean, n.visits, n.label.depth, batch_count_, batch_size_, params);
    const double left = n.children[0] == kNoNode ? kInfinity : nodes_[n.children[0]].b_value;
    const double right = n.children[1] == kNoNode ? kInfinity : nodes_[n.children[1]].b_value;
    n.b_value = std::min(n.u_value, std::max(left, right));
  }
}

void PartitionTree::dump(std::ostream& out) const {
  for (const TreeNode& n : nodes_) {
    nlohmann::json line = {
        {"h", n.label.depth},
        {"i", n.label.index},
        {"lower", n.region.lower()},
        {"upper", n.region.upper()},
        {"t", n.visits},
        {"count", n.sample_count},
        {"mean", n.emp_mean},
        // JSON has no infinity; unvisited bounds are written as null.
        {"U", std::isfinite(n.u_value) ? nlohmann::json(n.u_value) : nlohmann::json(nullptr)},
        {"B", std::isfinite(n.b_value) ? nlohmann::json(n.b_value) : nlohmann::json(nullptr)},
    };
    out << line.dump() << '\n';
  }
}

void PartitionTree::set_bounds_for_testing(NodeId id, double u, double b) {
  nodes_.at(id).u_value = u;
  nodes_.at(id).b_value = b;
}

}  // namespace hoover
