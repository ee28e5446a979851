#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace multicopy {

/// Index into the action set of the state where the action is taken.
struct ActionId {
  std::uint16_t value = 0;

  constexpr ActionId() = default;
  constexpr explicit ActionId(std::size_t v) : value(static_cast<std::uint16_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

/**
 * A multiset of primitive actions taken together at a split state, one per
 * spawned copy.
 *
 * Stored in canonical (ascending) order so that {A,B} and {B,A} are the same
 * table key. Ordering between multiactions is shortlex: first by size, then
 * lexicographically. The allow_duplicates flag is carried for validation only
 * and does not take part in comparisons.
 */
class MultiAction {
 public:
  MultiAction() = default;

  /// Throws std::invalid_argument when empty, or when duplicates are
  /// present but not allowed.
  MultiAction(std::vector<ActionId> actions, bool allow_duplicates);

  static MultiAction single(ActionId a);

  std::span<const ActionId> actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  bool allow_duplicates() const { return allow_duplicates_; }

  std::size_t distinct_count() const;
  bool has_repeats() const { return distinct_count() < size(); }
  std::size_t count(ActionId a) const;

  /// Joins per-action names in canonical order with `sep`.
  std::string label(const std::function<std::string(ActionId)>& name,
                    std::string_view sep = ",") const;

  friend bool operator==(const MultiAction& a, const MultiAction& b) {
    return a.actions_ == b.actions_;
  }
  friend std::strong_ordering operator<=>(const MultiAction& a, const MultiAction& b);

 private:
  std::vector<ActionId> actions_;
  bool allow_duplicates_ = false;
};

/// All multisets (or sets, without duplicates) of size 1..n_max over
/// `action_count` actions, in canonical shortlex order.
std::vector<MultiAction> enumerate_multiactions(std::size_t action_count, std::size_t n_max,
                                                bool allow_duplicates);

/// Closed-form size of enumerate_multiactions' output.
std::size_t multiaction_count(std::size_t action_count, std::size_t n_max, bool allow_duplicates);

}  // namespace multicopy
