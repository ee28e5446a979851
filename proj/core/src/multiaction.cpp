#include "multicopy/multiaction.hpp"

#include <algorithm>
#include <stdexcept>

namespace multicopy {

MultiAction::MultiAction(std::vector<ActionId> actions, bool allow_duplicates)
    : actions_(std::move(actions)), allow_duplicates_(allow_duplicates) {
  if (actions_.empty()) throw std::invalid_argument("multiaction must contain at least one action");
  std::sort(actions_.begin(), actions_.end());
  if (!allow_duplicates_ && std::adjacent_find(actions_.begin(), actions_.end()) != actions_.end())
    throw std::invalid_argument("duplicate action in a multiaction that disallows duplicates");
}

MultiAction MultiAction::single(ActionId a) { return MultiAction({a}, false); }

std::size_t MultiAction::distinct_count() const {
  std::size_t n = actions_.empty() ? 0 : 1;
  for (std::size_t i = 1; i < actions_.size(); ++i)
    if (actions_[i] != actions_[i - 1]) ++n;
  return n;
}

std::size_t MultiAction::count(ActionId a) const {
  return static_cast<std::size_t>(std::count(actions_.begin(), actions_.end(), a));
}

std::string MultiAction::label(const std::function<std::string(ActionId)>& name,
                               std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (i) out += sep;
    out += name(actions_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const MultiAction& a, const MultiAction& b) {
  if (auto c = a.actions_.size() <=> b.actions_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.actions_.begin(), a.actions_.end(),
                                                b.actions_.begin(), b.actions_.end());
}

namespace {

// Extends `prefix` with non-decreasing (or strictly increasing) action ids.
void extend(std::vector<ActionId>& prefix, std::size_t next, std::size_t remaining,
            std::size_t action_count, bool allow_duplicates, std::vector<MultiAction>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix, allow_duplicates);
    return;
  }
  for (std::size_t a = next; a < action_count; ++a) {
    prefix.push_back(ActionId(a));
    extend(prefix, allow_duplicates ? a : a + 1, remaining - 1, action_count, allow_duplicates,
           out);
    prefix.pop_back();
  }
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<MultiAction> enumerate_multiactions(std::size_t action_count, std::size_t n_max,
                                                bool allow_duplicates) {
  if (action_count == 0) throw std::invalid_argument("action_count must be at least 1");
  if (n_max == 0) throw std::invalid_argument("n_max must be at least 1");
  std::vector<MultiAction> out;
  out.reserve(multiaction_count(action_count, n_max, allow_duplicates));
  std::vector<ActionId> prefix;
  for (std::size_t k = 1; k <= n_max; ++k)
    extend(prefix, 0, k, action_count, allow_duplicates, out);
  return out;
}

std::size_t multiaction_count(std::size_t action_count, std::size_t n_max, bool allow_duplicates) {
  std::size_t total = 0;
  for (std::size_t k = 1; k <= n_max; ++k)
    total += allow_duplicates ? binomial(action_count + k - 1, k) : binomial(action_count, k);
  return total;
}

}  // namespace multicopy
