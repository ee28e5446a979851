#include "multicopy/bridges.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace multicopy {

namespace {

constexpr const char* kDirectionNames[] = {"N", "S", "E", "W"};

Direction orthogonal(Direction d, int which) {
  switch (d) {
    case Direction::North:
    case Direction::South:
      return which == 0 ? Direction::East : Direction::West;
    case Direction::East:
    case Direction::West:
      return which == 0 ? Direction::North : Direction::South;
  }
  return d;
}

}  // namespace

GridSpec GridSpec::three_bridges() {
  GridSpec g;
  g.bridges = {{"A", 5, 1, 100.0}, {"B", 11, 3, 100.0}, {"C", 8, 1, 100.0}};
  return g;
}

void GridSpec::validate() const {
  if (bridges.empty()) throw std::invalid_argument("grid needs at least one bridge");
  for (const auto& b : bridges) {
    if (b.name.empty()) throw std::invalid_argument("bridge names must not be empty");
    if (b.length < 2) throw std::invalid_argument("bridge " + b.name + ": length must be >= 2");
    if (b.width < 1) throw std::invalid_argument("bridge " + b.name + ": width must be >= 1");
  }
  for (std::size_t i = 0; i < bridges.size(); ++i)
    for (std::size_t j = i + 1; j < bridges.size(); ++j)
      if (bridges[i].name == bridges[j].name)
        throw std::invalid_argument("duplicate bridge name " + bridges[i].name);
  if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must lie in [0, 1]");
  if (!(step_cost <= 0.0)) throw std::invalid_argument("step_cost must be <= 0");
  if (!(fall_cost <= 0.0)) throw std::invalid_argument("fall_cost must be <= 0");
  if (max_actions < 1) throw std::invalid_argument("max_actions must be >= 1");
  if (max_steps_per_copy < 1) throw std::invalid_argument("max_steps_per_copy must be >= 1");
}

BridgesEnv::BridgesEnv(GridSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  start_actions_ = enumerate_multiactions(spec_.bridges.size(),
                                          static_cast<std::size_t>(spec_.max_actions),
                                          spec_.allow_duplicates);
  move_actions_ = enumerate_multiactions(kDirectionCount, 1, false);
  StateKey next = 1;  // 0 is the start state
  for (const auto& b : spec_.bridges) {
    cell_offset_.push_back(next);
    next += static_cast<StateKey>(b.length * b.width);
  }
  success_offset_ = next;
  failed_key_ = next + static_cast<StateKey>(spec_.bridges.size());
}

GridState BridgesEnv::reset(std::mt19937_64& rng) {
  broken_.reset();
  if (spec_.broken_mode) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(spec_.bridges.size()) - 1);
    broken_ = pick(rng);
  }
  return GridState::start();
}

int BridgesEnv::broken_column(int bridge) const {
  const int length = spec_.bridges.at(static_cast<std::size_t>(bridge)).length;
  return (length + 1) / 2;
}

std::size_t BridgesEnv::action_count(const GridState& s) const {
  switch (s.kind) {
    case GridState::Kind::Start:
      return spec_.bridges.size();
    case GridState::Kind::Cell:
      return kDirectionCount;
    default:
      return 0;
  }
}

const std::vector<MultiAction>& BridgesEnv::available_multiactions(const GridState& s) const {
  if (s.terminal()) throw std::invalid_argument("no actions in terminal state " + state_label(s));
  return s.kind == GridState::Kind::Start ? start_actions_ : move_actions_;
}

std::size_t BridgesEnv::multiaction_index(const GridState& s, const MultiAction& m) const {
  const auto& list = available_multiactions(s);
  auto it = std::lower_bound(list.begin(), list.end(), m);
  if (it == list.end() || *it != m)
    throw std::invalid_argument("multiaction not available in " + state_label(s));
  return static_cast<std::size_t>(it - list.begin());
}

GridState BridgesEnv::entry_state(ActionId bridge) const {
  const auto& b = spec_.bridges.at(bridge.index());
  return GridState::cell(static_cast<int>(bridge.index()), 0, b.width / 2);
}

EnvStep BridgesEnv::resolve_move(const GridState& s, Direction moved) const {
  if (s.kind != GridState::Kind::Cell) throw std::invalid_argument("moves only apply on bridges");
  const auto& b = spec_.bridges.at(static_cast<std::size_t>(s.bridge));
  int nx = s.x, ny = s.y;
  switch (moved) {
    case Direction::North: --ny; break;
    case Direction::South: ++ny; break;
    case Direction::East: ++nx; break;
    case Direction::West: --nx; break;
  }
  if (nx >= b.length)
    return EnvStep{GridState::success(s.bridge), RewardSplit{0.0, b.success_reward}, true, false};
  if (nx < 0) nx = 0;  // wall at the near end
  if (ny < 0 || ny >= b.width || (broken_ == s.bridge && nx == broken_column(s.bridge)))
    return EnvStep{GridState::failed(), RewardSplit{spec_.fall_cost, 0.0}, true, false};
  return EnvStep{GridState::cell(s.bridge, nx, ny), RewardSplit{spec_.step_cost, 0.0}, false,
                 false};
}

EnvStep BridgesEnv::step(const GridState& s, ActionId action, int steps_taken,
                         std::mt19937_64& rng) const {
  if (s.terminal()) throw std::invalid_argument("cannot step from terminal state " + state_label(s));
  if (action.index() >= action_count(s))
    throw std::invalid_argument("action " + std::to_string(action.index()) + " invalid in " +
                                state_label(s));
  EnvStep out;
  if (s.kind == GridState::Kind::Start) {
    out = EnvStep{entry_state(action), RewardSplit{spec_.step_cost, 0.0}, false, false};
  } else {
    auto moved = static_cast<Direction>(action.index());
    if (spec_.noise > 0.0) {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      if (u >= 1.0 - spec_.noise) moved = orthogonal(moved, u < 1.0 - spec_.noise / 2.0 ? 0 : 1);
    }
    out = resolve_move(s, moved);
  }
  if (!out.terminal && steps_taken + 1 >= spec_.max_steps_per_copy) {
    out.next_state = GridState::failed();
    out.terminal = true;
    out.timed_out = true;
  }
  return out;
}

StateKey BridgesEnv::key(const GridState& s) const {
  switch (s.kind) {
    case GridState::Kind::Start:
      return 0;
    case GridState::Kind::Cell: {
      const auto& b = spec_.bridges.at(static_cast<std::size_t>(s.bridge));
      return cell_offset_[static_cast<std::size_t>(s.bridge)] +
             static_cast<StateKey>(s.x * b.width + s.y);
    }
    case GridState::Kind::Success:
      return success_offset_ + static_cast<StateKey>(s.bridge);
    case GridState::Kind::Failed:
      return failed_key_;
  }
  return 0;
}

GridState BridgesEnv::state(StateKey k) const {
  if (k == 0) return GridState::start();
  if (k == failed_key_) return GridState::failed();
  if (k >= success_offset_ && k < failed_key_)
    return GridState::success(static_cast<int>(k - success_offset_));
  if (k > failed_key_) throw std::out_of_range("state key out of range");
  std::size_t b = 0;
  while (b + 1 < cell_offset_.size() && k >= cell_offset_[b + 1]) ++b;
  const int local = static_cast<int>(k - cell_offset_[b]);
  const int width = spec_.bridges[b].width;
  return GridState::cell(static_cast<int>(b), local / width, local % width);
}

std::string BridgesEnv::state_label(const GridState& s) const {
  switch (s.kind) {
    case GridState::Kind::Start:
      return "start";
    case GridState::Kind::Cell:
      return spec_.bridges.at(static_cast<std::size_t>(s.bridge)).name + "(" +
             std::to_string(s.x) + "," + std::to_string(s.y) + ")";
    case GridState::Kind::Success:
      return "success:" + spec_.bridges.at(static_cast<std::size_t>(s.bridge)).name;
    case GridState::Kind::Failed:
      return "failed";
  }
  return "?";
}

std::string BridgesEnv::action_label(const GridState& s, ActionId a) const {
  if (s.kind == GridState::Kind::Start) return spec_.bridges.at(a.index()).name;
  return kDirectionNames[a.index() % kDirectionCount];
}

std::string BridgesEnv::multiaction_label(const GridState& s, const MultiAction& m) const {
  return m.label([&](ActionId a) { return action_label(s, a); });
}

}  // namespace multicopy
