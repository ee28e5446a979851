#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "multicopy/boltzmann.hpp"
#include "multicopy/bridges.hpp"
#include "multicopy/episode_tree.hpp"
#include "multicopy/q_tables.hpp"

namespace multicopy {

/// Q(s, m) = Σ_{a∈m} Q_c(s, a) + Q_o(s, m), repeated actions counted with
/// multiplicity.
double multiaction_value(const QTables& q, StateKey s, const MultiAction& m);

/// Boltzmann choice over advantage-normalised multiaction values, or the
/// first maximiser in canonical order when `greedy` is set.
MultiAction select_multiaction(const QTables& q, StateKey s, std::span<const MultiAction> candidates,
                               double temperature, bool greedy, std::mt19937_64& rng);

/// One episode from the start state: a multiaction is chosen at the split,
/// then every copy acts alone with singleton multiactions. `env` must have
/// been reset. With `explore` off all choices are greedy.
EpisodeTree run_episode(const BridgesEnv& env, const QTables& q, double temperature, bool explore,
                        double discount, std::mt19937_64& rng);

/// Q-learning on every edge of the tree:
/// Q_c(s,a) += lr·(r_c + γ·max_a' Q_c(s',a') − Q_c(s,a)), no bootstrap past
/// a terminal edge. Edges are visited in copy-id order.
void update_cost(QTables& q, const EpisodeTree& tree, double lr, double discount);

/// Every-visit Monte Carlo on every node:
/// Q_o(s,m) += lr·(G_o(node) − Q_o(s,m)). Targets come from the tree only.
void update_opt(QTables& q, const EpisodeTree& tree, double lr);

/// Cost agent plus optimization agent sharing one Boltzmann policy.
class MulticopyAgent {
 public:
  MulticopyAgent(GridSpec grid, Schedules schedules, std::uint64_t seed);

  /// Runs training episode number episodes_trained() and applies both
  /// updates. Returns the episode's total return.
  double train_episode();
  /// Greedy episode with learning off.
  double test_episode();
  /// Greedy start-state multiaction under the current tables.
  MultiAction greedy_start() const;

  std::size_t episodes_trained() const { return episode_; }
  const QTables& tables() const { return q_; }
  const BridgesEnv& env() const { return env_; }
  const Schedules& schedules() const { return schedules_; }

 private:
  BridgesEnv env_;
  Schedules schedules_;
  QTables q_;
  std::mt19937_64 rng_;
  std::size_t episode_ = 0;
};

/// Trains a fresh agent for `episodes` episodes with the default schedules.
/// Throws std::invalid_argument when episodes is 0.
QTables train(const GridSpec& grid, std::size_t episodes, std::uint64_t seed);

}  // namespace multicopy
