#include "multicopy/episode_tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace multicopy {

EpisodeTree::EpisodeTree(double discount) : discount_(discount) {
  if (!(discount >= 0.0 && discount <= 1.0))
    throw std::invalid_argument("discount must lie in [0, 1]");
}

CopyId EpisodeTree::add_root(StateKey state, MultiAction multiaction) {
  if (!nodes_.empty()) throw std::logic_error("episode tree already has a root");
  return add_node(state, std::move(multiaction));
}

CopyId EpisodeTree::add_node(StateKey state, MultiAction multiaction) {
  nodes_.push_back(EpisodeNode{state, std::move(multiaction), {}});
  return static_cast<CopyId>(nodes_.size() - 1);
}

void EpisodeTree::add_edge(CopyId from, ActionId action, RewardSplit reward,
                           std::optional<CopyId> child) {
  if (from >= nodes_.size()) throw std::out_of_range("edge source is not a node");
  if (child && (*child <= from || *child >= nodes_.size()))
    throw std::invalid_argument("edge child must be an existing node created after its parent");
  nodes_[from].edges.push_back(EpisodeEdge{action, reward, child});
}

void EpisodeTree::validate() const {
  if (nodes_.empty()) throw std::logic_error("episode tree has no root");
  std::vector<int> parents(nodes_.size(), 0);
  for (CopyId id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    if (n.edges.size() != n.multiaction.size())
      throw std::logic_error("node " + std::to_string(id) + " has " +
                             std::to_string(n.edges.size()) + " edges for a multiaction of size " +
                             std::to_string(n.multiaction.size()));
    std::vector<ActionId> taken;
    for (const auto& e : n.edges) {
      taken.push_back(e.action);
      if (e.child) ++parents[*e.child];
    }
    std::sort(taken.begin(), taken.end());
    if (!std::equal(taken.begin(), taken.end(), n.multiaction.actions().begin()))
      throw std::logic_error("node " + std::to_string(id) +
                             " edge actions do not match its multiaction");
  }
  if (parents[0] != 0) throw std::logic_error("root must not have a parent");
  for (CopyId id = 1; id < nodes_.size(); ++id)
    if (parents[id] != 1)
      throw std::logic_error("node " + std::to_string(id) + " must have exactly one parent");
}

std::vector<SplitReturn> per_copy_returns(const EpisodeTree& tree) {
  const auto& nodes = tree.nodes();
  const double gamma = tree.discount();
  std::vector<SplitReturn> out(nodes.size());
  // Children always have larger ids, so a reverse sweep sees them first.
  for (std::size_t i = nodes.size(); i-- > 0;) {
    double cost = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : nodes[i].edges) {
      double child_cost = 0.0, child_opt = 0.0;
      if (e.child) {
        child_cost = out[*e.child].cost;
        child_opt = out[*e.child].optimization;
      }
      cost += e.reward.cost + gamma * child_cost;
      best = std::max(best, e.reward.optimization + gamma * child_opt);
    }
    out[i] = SplitReturn{cost, nodes[i].edges.empty() ? 0.0 : best};
  }
  return out;
}

double cost_return(const EpisodeTree& tree) {
  if (tree.empty()) return 0.0;
  return per_copy_returns(tree).front().cost;
}

double optimization_return(const EpisodeTree& tree) {
  if (tree.empty()) return 0.0;
  return per_copy_returns(tree).front().optimization;
}

double total_return(const EpisodeTree& tree) {
  return cost_return(tree) + optimization_return(tree);
}

}  // namespace multicopy
