#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "multicopy/multiaction.hpp"

namespace multicopy {

/// Dense state index assigned by the environment. Opaque to the tree.
using StateKey = std::uint32_t;

/// Reward emitted by one transition, split into its summed and maximized parts.
struct RewardSplit {
  double cost = 0.0;
  double optimization = 0.0;

  double total() const { return cost + optimization; }
  friend bool operator==(const RewardSplit&, const RewardSplit&) = default;
};

/// Node id. Also the copy id of the agent copy acting at that node.
using CopyId = std::uint32_t;

struct EpisodeEdge {
  ActionId action;
  RewardSplit reward;
  /// Empty when the edge ends the copy (terminal marker).
  std::optional<CopyId> child;

  bool terminal() const { return !child.has_value(); }
};

struct EpisodeNode {
  StateKey state = 0;
  MultiAction multiaction;
  std::vector<EpisodeEdge> edges;
};

/**
 * Branching trajectory of agent copies.
 *
 * Nodes live in a flat arena indexed by CopyId, with the root at id 0. Every
 * child id is strictly larger than its parent's, so ids are a valid
 * topological order and the tree is finite by construction. Copies simulated
 * one after another produce depth-first ids.
 */
class EpisodeTree {
 public:
  explicit EpisodeTree(double discount);

  CopyId add_root(StateKey state, MultiAction multiaction);
  CopyId add_node(StateKey state, MultiAction multiaction);
  /// Appends an edge to `from`. `child` must be a node created after `from`.
  void add_edge(CopyId from, ActionId action, RewardSplit reward, std::optional<CopyId> child);

  double discount() const { return discount_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const EpisodeNode& node(CopyId id) const { return nodes_.at(id); }
  const EpisodeNode& root() const { return nodes_.at(0); }
  const std::vector<EpisodeNode>& nodes() const { return nodes_; }

  /// Throws std::logic_error if the tree is not well formed: edge count and
  /// actions must match each node's multiaction, and every non-root node must
  /// have exactly one parent.
  void validate() const;

 private:
  double discount_;
  std::vector<EpisodeNode> nodes_;
};

struct SplitReturn {
  double cost = 0.0;
  double optimization = 0.0;

  double total() const { return cost + optimization; }
};

/// G_c at the root: Σ over edges of [r_c + γ·G_c(child)], summed across copies.
double cost_return(const EpisodeTree& tree);

/// G_o at the root: max over edges of [r_o + γ·G_o(child)], best copy only.
double optimization_return(const EpisodeTree& tree);

/// cost_return + optimization_return.
double total_return(const EpisodeTree& tree);

/// (G_c, G_o) from every node downward, indexed by CopyId.
std::vector<SplitReturn> per_copy_returns(const EpisodeTree& tree);

}  // namespace multicopy
