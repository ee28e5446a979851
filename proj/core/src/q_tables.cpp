#include "multicopy/q_tables.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "multicopy/csv.hpp"

namespace multicopy {

QTables::QTables(const BridgesEnv& env) {
  const auto n = env.state_count();
  set_of_.assign(n, -1);
  cost_.resize(n);
  opt_.resize(n);
  std::vector<const std::vector<MultiAction>*> seen;
  for (StateKey k = 0; k < n; ++k) {
    const auto s = env.state(k);
    if (s.terminal()) continue;
    const auto& list = env.available_multiactions(s);
    auto it = std::find(seen.begin(), seen.end(), &list);
    if (it == seen.end()) {
      seen.push_back(&list);
      sets_.push_back(list);
      it = seen.end() - 1;
    }
    set_of_[k] = static_cast<int>(it - seen.begin());
    cost_[k].assign(env.action_count(s), 0.0);
    opt_[k].assign(list.size(), 0.0);
  }
}

const std::vector<MultiAction>& QTables::candidates(StateKey s) const {
  static const std::vector<MultiAction> none;
  const int set = set_of_.at(s);
  return set < 0 ? none : sets_[static_cast<std::size_t>(set)];
}

std::size_t QTables::index_of(StateKey s, const MultiAction& m) const {
  const auto& list = candidates(s);
  auto it = std::lower_bound(list.begin(), list.end(), m);
  if (it == list.end() || *it != m)
    throw std::invalid_argument("multiaction is not a candidate at state " + std::to_string(s));
  return static_cast<std::size_t>(it - list.begin());
}

double QTables::best_cost(StateKey s) const {
  const auto& row = cost_.at(s);
  return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

void write_q_tables_csv(std::ostream& out, const QTables& q, const BridgesEnv& env) {
  csv::write_row(out, {"table", "state", "action", "value"});
  for (StateKey k = 0; k < q.state_count(); ++k) {
    const auto s = env.state(k);
    const auto label = env.state_label(s);
    const auto costs = q.cost_row(k);
    for (std::size_t a = 0; a < costs.size(); ++a)
      csv::write_row(out, {"cost", label, env.action_label(s, ActionId(a)), csv::real(costs[a])});
    const auto& cands = q.candidates(k);
    const auto opts = q.opt_row(k);
    for (std::size_t i = 0; i < cands.size(); ++i)
      csv::write_row(out, {"opt", label, env.multiaction_label(s, cands[i]), csv::real(opts[i])});
  }
}

}  // namespace multicopy
