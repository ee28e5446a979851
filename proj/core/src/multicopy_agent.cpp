#include "multicopy/multicopy_agent.hpp"

#include <stdexcept>
#include <vector>

#include "multicopy/rollout.hpp"

namespace multicopy {

double multiaction_value(const QTables& q, StateKey s, const MultiAction& m) {
  double cost = 0.0;
  for (ActionId a : m.actions()) cost += q.cost(s, a);
  return cost + q.opt(s, m);
}

namespace {

std::size_t choose_index(std::span<const double> values, double temperature, bool greedy,
                         std::mt19937_64& rng) {
  return greedy ? greedy_index(values) : boltzmann_index(values, temperature, rng);
}

// Values of the singleton moves at a bridge cell. Singleton i is action i.
std::size_t choose_move(const QTables& q, StateKey s, double temperature, bool greedy,
                        std::mt19937_64& rng) {
  const auto costs = q.cost_row(s);
  const auto opts = q.opt_row(s);
  double values[kDirectionCount];
  for (std::size_t a = 0; a < kDirectionCount; ++a) values[a] = costs[a] + opts[a];
  return choose_index(values, temperature, greedy, rng);
}

}  // namespace

MultiAction select_multiaction(const QTables& q, StateKey s, std::span<const MultiAction> candidates,
                               double temperature, bool greedy, std::mt19937_64& rng) {
  if (candidates.empty()) throw std::invalid_argument("no candidate multiactions");
  std::vector<double> values;
  values.reserve(candidates.size());
  for (const auto& m : candidates) values.push_back(multiaction_value(q, s, m));
  return candidates[choose_index(values, temperature, greedy, rng)];
}

EpisodeTree run_episode(const BridgesEnv& env, const QTables& q, double temperature, bool explore,
                        double discount, std::mt19937_64& rng) {
  const StateKey start = env.key(GridState::start());
  const MultiAction split =
      select_multiaction(q, start, q.candidates(start), temperature, !explore, rng);
  return rollout_copies(
      env, split,
      [&](const GridState&, StateKey key) {
        return ActionId(choose_move(q, key, temperature, !explore, rng));
      },
      discount, rng);
}

void update_cost(QTables& q, const EpisodeTree& tree, double lr, double discount) {
  if (lr == 0.0) return;
  for (const auto& node : tree.nodes()) {
    for (const auto& e : node.edges) {
      const double bootstrap = e.child ? q.best_cost(tree.node(*e.child).state) : 0.0;
      double& value = q.cost(node.state, e.action);
      value += lr * (e.reward.cost + discount * bootstrap - value);
    }
  }
}

void update_opt(QTables& q, const EpisodeTree& tree, double lr) {
  if (lr == 0.0) return;
  const auto returns = per_copy_returns(tree);
  for (CopyId id = 0; id < tree.size(); ++id) {
    const auto& node = tree.node(id);
    double& value = q.opt(node.state, node.multiaction);
    value += lr * (returns[id].optimization - value);
  }
}

MulticopyAgent::MulticopyAgent(GridSpec grid, Schedules schedules, std::uint64_t seed)
    : env_(std::move(grid)), schedules_(schedules), q_(env_), rng_(seed) {}

double MulticopyAgent::train_episode() {
  const std::size_t e = episode_++;
  env_.reset(rng_);
  const auto tree =
      run_episode(env_, q_, schedules_.temperature(e), true, schedules_.discount, rng_);
  update_cost(q_, tree, schedules_.lr_cost(e), schedules_.discount);
  update_opt(q_, tree, schedules_.lr_opt(e));
  return total_return(tree);
}

double MulticopyAgent::test_episode() {
  env_.reset(rng_);
  return total_return(run_episode(env_, q_, 1.0, false, schedules_.discount, rng_));
}

MultiAction MulticopyAgent::greedy_start() const {
  const StateKey start = env_.key(GridState::start());
  std::mt19937_64 unused;
  return select_multiaction(q_, start, q_.candidates(start), 1.0, true, unused);
}

QTables train(const GridSpec& grid, std::size_t episodes, std::uint64_t seed) {
  if (episodes == 0) throw std::invalid_argument("training needs at least one episode");
  Schedules schedules;
  schedules.episodes = episodes;
  MulticopyAgent agent(grid, schedules, seed);
  for (std::size_t e = 0; e < episodes; ++e) agent.train_episode();
  return agent.tables();
}

}  // namespace multicopy
