#pragma once

#include <functional>
#include <random>

#include "multicopy/bridges.hpp"
#include "multicopy/episode_tree.hpp"

namespace multicopy {

/// Picks the next movement action for a copy standing on a bridge cell.
using CopyPolicy = std::function<ActionId(const GridState& state, StateKey key)>;

/// Called after every environment step, before the copy picks its next
/// action. `copy` is the position of the copy's first action in the split.
using StepObserver = std::function<void(std::size_t copy, StateKey from, ActionId action,
                                        const EnvStep& step)>;

/**
 * Spawns one copy per action of `split` at the start state and runs each copy
 * to termination under `policy`, one copy after another. Rewards are recorded
 * exactly as the environment emits them. `env` must have been reset.
 */
EpisodeTree rollout_copies(const BridgesEnv& env, const MultiAction& split,
                           const CopyPolicy& policy, double discount, std::mt19937_64& rng,
                           const StepObserver& observer = {});

}  // namespace multicopy
