#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "multicopy/boltzmann.hpp"
#include "multicopy/bridges.hpp"
#include "multicopy/episode_tree.hpp"

namespace multicopy {

/// Base state plus the joint action chosen at the split for this episode.
struct AugmentedState {
  StateKey base = 0;
  std::optional<MultiAction> context;
};

/**
 * One Q table shared by every copy, over (augmented state, action). A context
 * gets its own block of rows the first time it is written; reads of unseen
 * entries return 0.
 */
class SharedQ {
 public:
  explicit SharedQ(const BridgesEnv& env);

  double value(const AugmentedState& s, ActionId a) const;
  double& at(const AugmentedState& s, ActionId a);
  /// Action values at `s`; all zeros for unseen contexts.
  std::span<const double> row(const AugmentedState& s) const;
  double best(const AugmentedState& s) const;

  /// Distinct non-empty contexts with allocated rows.
  std::size_t context_count() const { return by_context_.size(); }
  std::vector<MultiAction> contexts() const;

 private:
  using Block = std::vector<std::vector<double>>;
  const Block* find(const std::optional<MultiAction>& context) const;
  Block& block(const std::optional<MultiAction>& context);

  Block blank_;
  Block no_context_;
  std::map<MultiAction, Block> by_context_;
};

/// Σ_{a∈candidate} Q((start, candidate), a): each copy's start action valued
/// in the context of the whole joint action.
double joint_value(const SharedQ& q, const BridgesEnv& env, const MultiAction& candidate);

struct JointEpisode {
  EpisodeTree tree;
  /// Root edge index of the copy credited with the optimization reward.
  std::optional<std::size_t> credited_copy;
  /// Factored return of the tree, identical to the multicopy agent's measure.
  double episode_return = 0.0;
};

/// Best successful copy: highest discounted success reward, then earliest
/// arrival, then lowest copy index. Empty if no copy succeeded.
std::optional<std::size_t> best_copy(const EpisodeTree& tree);

/**
 * Runs one episode (env must be reset) and, when `lr` > 0, applies Q-learning
 * to every copy's transitions on augmented states: online for ordinary steps,
 * after the episode for each copy's final step. Only the best copy keeps its
 * optimization reward; every copy keeps its own costs.
 */
JointEpisode run_and_update(const BridgesEnv& env, SharedQ& q, double temperature, double lr,
                            double discount, bool explore, std::mt19937_64& rng);

class JointActionAgent {
 public:
  JointActionAgent(GridSpec grid, Schedules schedules, std::uint64_t seed);

  double train_episode();
  double test_episode();
  MultiAction greedy_start() const;

  std::size_t episodes_trained() const { return episode_; }
  const SharedQ& table() const { return q_; }
  const BridgesEnv& env() const { return env_; }

 private:
  BridgesEnv env_;
  Schedules schedules_;
  SharedQ q_;
  std::mt19937_64 rng_;
  std::size_t episode_ = 0;
};

}  // namespace multicopy
