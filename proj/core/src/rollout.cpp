#include "multicopy/rollout.hpp"

namespace multicopy {

EpisodeTree rollout_copies(const BridgesEnv& env, const MultiAction& split,
                           const CopyPolicy& policy, double discount, std::mt19937_64& rng,
                           const StepObserver& observer) {
  EpisodeTree tree(discount);
  const auto start = GridState::start();
  const CopyId root = tree.add_root(env.key(start), split);
  const auto firsts = split.actions();
  for (std::size_t copy = 0; copy < firsts.size(); ++copy) {
    const ActionId first = firsts[copy];
    CopyId parent = root;
    GridState state = start;
    ActionId action = first;
    for (int steps = 0;; ++steps) {
      const EnvStep out = env.step(state, action, steps, rng);
      if (observer) observer(copy, env.key(state), action, out);
      if (out.terminal) {
        tree.add_edge(parent, action, out.reward, std::nullopt);
        break;
      }
      const StateKey next_key = env.key(out.next_state);
      const ActionId next_action = policy(out.next_state, next_key);
      const CopyId child = tree.add_node(next_key, MultiAction::single(next_action));
      tree.add_edge(parent, action, out.reward, child);
      parent = child;
      state = out.next_state;
      action = next_action;
    }
  }
  return tree;
}

}  // namespace multicopy
