#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "multicopy/episode_tree.hpp"
#include "multicopy/multiaction.hpp"

namespace multicopy {

struct BridgeSpec {
  std::string name;
  int length = 2;  // cells along the bridge (x)
  int width = 1;   // cells across the bridge (y)
  double success_reward = 100.0;

  friend bool operator==(const BridgeSpec&, const BridgeSpec&) = default;
};

/// Layout and reward parameters of a bridge world.
struct GridSpec {
  std::vector<BridgeSpec> bridges;
  double step_cost = -2.0;
  double fall_cost = -10.0;
  double noise = 0.0;  // beta
  int max_actions = 1;
  bool allow_duplicates = false;
  bool broken_mode = false;
  int max_steps_per_copy = 200;

  /// A 5x1, B 11x3, C 8x1, success reward 100 each.
  static GridSpec three_bridges();

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Position of one agent copy.
struct GridState {
  enum class Kind { Start, Cell, Success, Failed };

  Kind kind = Kind::Start;
  int bridge = -1;
  int x = 0;
  int y = 0;

  static GridState start() { return {}; }
  static GridState cell(int bridge, int x, int y) { return {Kind::Cell, bridge, x, y}; }
  static GridState success(int bridge) { return {Kind::Success, bridge, 0, 0}; }
  static GridState failed() { return {Kind::Failed, -1, 0, 0}; }

  bool terminal() const { return kind == Kind::Success || kind == Kind::Failed; }
  friend bool operator==(const GridState&, const GridState&) = default;
};

/// Movement actions available on every bridge cell.
enum class Direction { North = 0, South = 1, East = 2, West = 3 };
inline constexpr std::size_t kDirectionCount = 4;

struct EnvStep {
  GridState next_state;
  RewardSplit reward;
  bool terminal = false;
  /// Terminated by the per-copy step cap rather than by reaching a terminal.
  bool timed_out = false;
};

/**
 * Three-bridges style gridworld.
 *
 * The start state is the only split state: its actions pick a bridge and are
 * noise free. On a bridge, N/S/E/W move in the intended direction with
 * probability 1-beta and to each orthogonal direction with beta/2. Leaving the
 * bridge sideways or entering the broken column fails the copy; passing the
 * last column succeeds; moving west from the first column bumps the wall.
 *
 * One instance models one episode at a time: reset() fixes the broken bridge
 * (in broken mode) for every copy until the next reset.
 */
class BridgesEnv {
 public:
  explicit BridgesEnv(GridSpec spec);

  const GridSpec& spec() const { return spec_; }

  GridState reset(std::mt19937_64& rng);
  std::optional<int> broken_bridge() const { return broken_; }
  /// Column index that fails copies on the broken bridge.
  int broken_column(int bridge) const;

  std::size_t action_count(const GridState& s) const;
  /// Throws std::invalid_argument for terminal states.
  const std::vector<MultiAction>& available_multiactions(const GridState& s) const;
  /// Position of `m` in available_multiactions(s); throws if absent.
  std::size_t multiaction_index(const GridState& s, const MultiAction& m) const;

  /// `steps_taken` counts the copy's earlier steps, including the one that
  /// left the start state. Throws std::invalid_argument from terminal states.
  EnvStep step(const GridState& s, ActionId action, int steps_taken, std::mt19937_64& rng) const;

  /// Deterministic outcome of `action` if it goes in direction `moved`.
  /// Exposed so exact solvers can build the transition model.
  EnvStep resolve_move(const GridState& s, Direction moved) const;

  GridState entry_state(ActionId bridge) const;
  bool is_split_state(const GridState& s) const { return s.kind == GridState::Kind::Start; }

  // Dense indexing over every state, terminals included.
  std::size_t state_count() const { return failed_key_ + 1; }
  StateKey key(const GridState& s) const;
  GridState state(StateKey k) const;

  std::string state_label(const GridState& s) const;
  std::string action_label(const GridState& s, ActionId a) const;
  /// Bridge names joined by commas at the start state, e.g. "A,A,C".
  std::string multiaction_label(const GridState& s, const MultiAction& m) const;

 private:
  GridSpec spec_;
  std::vector<MultiAction> start_actions_;
  std::vector<MultiAction> move_actions_;
  std::vector<StateKey> cell_offset_;
  StateKey success_offset_ = 0;
  StateKey failed_key_ = 0;
  std::optional<int> broken_;
};

}  // namespace multicopy
