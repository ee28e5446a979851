#include "multicopy/joint_action_agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multicopy/rollout.hpp"

namespace multicopy {

SharedQ::SharedQ(const BridgesEnv& env) {
  blank_.resize(env.state_count());
  for (StateKey k = 0; k < env.state_count(); ++k)
    blank_[k].assign(env.action_count(env.state(k)), 0.0);
  no_context_ = blank_;
}

const SharedQ::Block* SharedQ::find(const std::optional<MultiAction>& context) const {
  if (!context) return &no_context_;
  auto it = by_context_.find(*context);
  return it == by_context_.end() ? nullptr : &it->second;
}

SharedQ::Block& SharedQ::block(const std::optional<MultiAction>& context) {
  if (!context) return no_context_;
  auto it = by_context_.find(*context);
  if (it == by_context_.end()) it = by_context_.emplace(*context, blank_).first;
  return it->second;
}

std::span<const double> SharedQ::row(const AugmentedState& s) const {
  const Block* b = find(s.context);
  return (b ? *b : blank_).at(s.base);
}

double SharedQ::value(const AugmentedState& s, ActionId a) const { return row(s)[a.index()]; }

double& SharedQ::at(const AugmentedState& s, ActionId a) {
  return block(s.context).at(s.base).at(a.index());
}

double SharedQ::best(const AugmentedState& s) const {
  const auto r = row(s);
  return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

std::vector<MultiAction> SharedQ::contexts() const {
  std::vector<MultiAction> out;
  for (const auto& [m, _] : by_context_) out.push_back(m);
  return out;
}

double joint_value(const SharedQ& q, const BridgesEnv& env, const MultiAction& candidate) {
  const AugmentedState start{env.key(GridState::start()), candidate};
  double total = 0.0;
  for (ActionId a : candidate.actions()) total += q.value(start, a);
  return total;
}

std::optional<std::size_t> best_copy(const EpisodeTree& tree) {
  if (tree.empty()) return std::nullopt;
  const double gamma = tree.discount();
  std::optional<std::size_t> best;
  double best_value = 0.0;
  std::size_t best_arrival = 0;
  const auto& root = tree.root();
  for (std::size_t j = 0; j < root.edges.size(); ++j) {
    const EpisodeEdge* edge = &root.edges[j];
    double value = 0.0, discount = 1.0;
    std::size_t t = 0, arrival = 0;
    bool succeeded = false;
    while (true) {
      if (edge->reward.optimization != 0.0) {
        value += discount * edge->reward.optimization;
        arrival = t;
        succeeded = true;
      }
      if (edge->terminal()) break;
      edge = &tree.node(*edge->child).edges.front();
      discount *= gamma;
      ++t;
    }
    if (!succeeded) continue;
    if (!best || value > best_value || (value == best_value && arrival < best_arrival)) {
      best = j;
      best_value = value;
      best_arrival = arrival;
    }
  }
  return best;
}

JointEpisode run_and_update(const BridgesEnv& env, SharedQ& q, double temperature, double lr,
                            double discount, bool explore, std::mt19937_64& rng) {
  const GridState start = GridState::start();
  const StateKey start_key = env.key(start);
  const auto& candidates = env.available_multiactions(start);
  std::vector<double> values;
  values.reserve(candidates.size());
  for (const auto& m : candidates) values.push_back(joint_value(q, env, m));
  const std::size_t pick =
      explore ? boltzmann_index(values, temperature, rng) : greedy_index(values);
  const MultiAction& context = candidates[pick];

  // Non-terminal steps are learned online, so copies launched later already
  // see what earlier copies learned. A terminal step's target depends on
  // which copy is credited, which is only known once every copy is done.
  struct Terminal {
    StateKey from;
    ActionId action;
    RewardSplit reward;
  };
  std::vector<Terminal> terminals(context.size());
  const auto observe = [&](std::size_t copy, StateKey from, ActionId action, const EnvStep& st) {
    if (st.terminal) {
      terminals[copy] = {from, action, st.reward};
      return;
    }
    if (lr == 0.0) return;
    const double target =
        st.reward.cost + discount * q.best(AugmentedState{env.key(st.next_state), context});
    double& v = q.at(AugmentedState{from, context}, action);
    v += lr * (target - v);
  };
  JointEpisode out{rollout_copies(
                       env, context,
                       [&](const GridState&, StateKey key) {
                         const auto r = q.row(AugmentedState{key, context});
                         const std::size_t a = explore ? boltzmann_index(r, temperature, rng)
                                                       : greedy_index(r);
                         return ActionId(a);
                       },
                       discount, rng, observe),
                   std::nullopt, 0.0};
  out.credited_copy = best_copy(out.tree);
  out.episode_return = total_return(out.tree);
  if (lr == 0.0) return out;

  for (std::size_t j = 0; j < terminals.size(); ++j) {
    const Terminal& t = terminals[j];
    const double target = t.reward.cost + (out.credited_copy == j ? t.reward.optimization : 0.0);
    double& v = q.at(AugmentedState{t.from, context}, t.action);
    v += lr * (target - v);
  }
  return out;
}

JointActionAgent::JointActionAgent(GridSpec grid, Schedules schedules, std::uint64_t seed)
    : env_(std::move(grid)), schedules_(schedules), q_(env_), rng_(seed) {}

double JointActionAgent::train_episode() {
  const std::size_t e = episode_++;
  env_.reset(rng_);
  return run_and_update(env_, q_, schedules_.temperature(e), schedules_.lr_cost(e),
                        schedules_.discount, true, rng_)
      .episode_return;
}

double JointActionAgent::test_episode() {
  env_.reset(rng_);
  return run_and_update(env_, q_, 1.0, 0.0, schedules_.discount, false, rng_).episode_return;
}

MultiAction JointActionAgent::greedy_start() const {
  const auto& candidates = env_.available_multiactions(GridState::start());
  std::vector<double> values;
  for (const auto& m : candidates) values.push_back(joint_value(q_, env_, m));
  return candidates[greedy_index(values)];
}

}  // namespace multicopy
