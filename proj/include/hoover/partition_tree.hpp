#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "hoover/region.hpp"

namespace hoover {

/// Cell label (h, i): depth h >= 0 and 1-based index i in [1, 2^h].
/// Children of (h, i) are (h+1, 2i-1) and (h+1, 2i).
struct NodeLabel {
  int depth = 0;
  std::uint64_t index = 1;

  NodeLabel child(int side) const { return {depth + 1, 2 * index - 1 + static_cast<std::uint64_t>(side)}; }

  friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct TreeNode {
  NodeLabel label;
  Region region;
  NodeId parent = kNoNode;
  std::array<NodeId, 2> children{kNoNode, kNoNode};
  std::uint64_t visits = 0;        // t: batches routed through the node
  std::uint64_t sample_count = 0;  // count: observations routed through the node
  double emp_mean = 0.0;
  double u_value = kInfinity;
  double b_value = kInfinity;

  bool is_leaf() const { return children[0] == kNoNode && children[1] == kNoNode; }
};

struct Traversal {
  std::vector<NodeId> path;  // existing nodes, root first
  NodeId parent = kNoNode;   // last node of path, owner of the new leaf
  int side = 0;              // 0 = left child, 1 = right child
  NodeLabel new_label;
  Region new_region;
};

struct BackupParams {
  double sigma = 0.5;
  double nu = 1.0;
  double rho = 0.5;
};

/// Binary partition of a search domain carrying HOO-MB statistics.
///
/// Nodes live in an arena in insertion order; since every child is inserted
/// after its parent, reverse arena order visits children before parents.
class PartitionTree {
 public:
  PartitionTree(Region domain, std::size_t batch_size);

  std::size_t batch_size() const { return batch_size_; }
  std::uint64_t batch_count() const { return batch_count_; }
  std::uint64_t query_count() const { return batch_count_ * batch_size_; }
  std::size_t node_count() const { return nodes_.size(); }
  int max_depth() const { return max_depth_; }

  NodeId root() const { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const TreeNode> nodes() const { return nodes_; }

  /// B-value of child `side` of `id`; +inf when the child is not inserted.
  double child_b_value(NodeId id, int side) const;

  /// Walks from the root towards the child with the larger B-value (left on
  /// ties) until it reaches a child that has not been inserted yet.
  Traversal traverse() const;

  /// Inserts the leaf described by `traversal` and returns its id.
  NodeId insert(const Traversal& traversal);

  /// Adds one batch of observations to every node of `path`:
  /// t += 1, count += b, f <- (1 - b/count) f + sum(y)/count.
  void update_path(std::span<const NodeId> path, std::span<const double> batch);

  /// Marks one more completed batch (m += 1, n += b).
  void complete_batch() { ++batch_count_; }

  /// Recomputes U and B for every node, children before parents, using the
  /// current batch count m. Unvisited nodes keep U = B = +inf.
  void backup_all(const BackupParams& params);

  /// U-value of a visited node at depth `depth` for a given m.
  static double u_value(double emp_mean, std::uint64_t visits, int depth, std::uint64_t m,
                        std::size_t batch_size, const BackupParams& params);

  /// One line per node, JSON object per line.
  void dump(std::ostream& out) const;

  // Test hook: overwrite the bound values of a node.
  void set_bounds_for_testing(NodeId id, double u_value, double b_value);

 private:
  std::vector<TreeNode> nodes_;
  std::size_t batch_size_;
  std::uint64_t batch_count_ = 0;
  int max_depth_ = 0;
};

}  // namespace hoover
