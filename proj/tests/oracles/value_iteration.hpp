#pragma once
// Exact value iteration on the single-copy bridge MDP. The transition model is
// rebuilt here from resolve_move and the noise probabilities; the step cap is
// ignored, so it matches learners only where timeouts are negligible.

#include <algorithm>
#include <cmath>
#include <vector>

#include "multicopy/bridges.hpp"

namespace oracle {

struct ValueIteration {
  std::vector<double> value;                     // per StateKey, terminals 0
  std::vector<std::vector<double>> action_value;  // per StateKey, per action
};

inline std::vector<std::pair<double, multicopy::Direction>> outcomes(multicopy::Direction d,
                                                                     double noise) {
  using multicopy::Direction;
  const bool vertical = d == Direction::North || d == Direction::South;
  const Direction left = vertical ? Direction::East : Direction::North;
  const Direction right = vertical ? Direction::West : Direction::South;
  return {{1.0 - noise, d}, {noise / 2.0, left}, {noise / 2.0, right}};
}

/// With `cost_only` the success reward is dropped, giving the fixed point a
/// Q-learner reaches on cost rewards alone.
inline ValueIteration value_iteration(const multicopy::BridgesEnv& env, double discount,
                                      bool cost_only = false, double tolerance = 1e-12) {
  using namespace multicopy;
  const std::size_t n = env.state_count();
  ValueIteration vi{std::vector<double>(n, 0.0), std::vector<std::vector<double>>(n)};
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (StateKey k = 0; k < n; ++k) {
      const GridState s = env.state(k);
      if (s.terminal()) continue;
      auto& row = vi.action_value[k];
      row.assign(env.action_count(s), 0.0);
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (s.kind == GridState::Kind::Start) {
          const GridState entry = env.entry_state(ActionId(a));
          row[a] = env.spec().step_cost + discount * vi.value[env.key(entry)];
          continue;
        }
        for (auto [p, moved] : outcomes(static_cast<Direction>(a), env.spec().noise)) {
          if (p == 0.0) continue;
          const EnvStep st = env.resolve_move(s, moved);
          const double next = st.terminal ? 0.0 : vi.value[env.key(st.next_state)];
          const double r = cost_only ? st.reward.cost : st.reward.total();
          row[a] += p * (r + discount * next);
        }
      }
      const double best = *std::max_element(row.begin(), row.end());
      change = std::max(change, std::abs(best - vi.value[k]));
      vi.value[k] = best;
    }
    if (change < tolerance) break;
  }
  return vi;
}

/// Actions within `slack` of the best action value at state k.
inline std::vector<std::size_t> optimal_actions(const ValueIteration& vi, multicopy::StateKey k,
                                                double slack = 1e-9) {
  const auto& row = vi.action_value.at(k);
  const double best = *std::max_element(row.begin(), row.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < row.size(); ++a)
    if (row[a] >= best - slack) out.push_back(a);
  return out;
}

}  // namespace oracle
