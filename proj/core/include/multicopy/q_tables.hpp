#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "multicopy/bridges.hpp"

namespace multicopy {

/**
 * Cost values per (state, action) and optimization values per
 * (state, multiaction), dense over the environment's states. Unseen entries
 * read as 0. Terminal states have empty rows.
 */
class QTables {
 public:
  explicit QTables(const BridgesEnv& env);

  std::size_t state_count() const { return set_of_.size(); }

  std::span<const double> cost_row(StateKey s) const { return cost_.at(s); }
  std::span<double> cost_row(StateKey s) { return cost_.at(s); }
  std::span<const double> opt_row(StateKey s) const { return opt_.at(s); }
  std::span<double> opt_row(StateKey s) { return opt_.at(s); }

  double cost(StateKey s, ActionId a) const { return cost_.at(s).at(a.index()); }
  double& cost(StateKey s, ActionId a) { return cost_.at(s).at(a.index()); }
  double opt(StateKey s, const MultiAction& m) const { return opt_.at(s)[index_of(s, m)]; }
  double& opt(StateKey s, const MultiAction& m) { return opt_.at(s)[index_of(s, m)]; }

  /// Candidate multiactions at `s`, in canonical order (empty if terminal).
  const std::vector<MultiAction>& candidates(StateKey s) const;
  std::size_t index_of(StateKey s, const MultiAction& m) const;

  /// max_a cost(s, a), or 0 for states without actions.
  double best_cost(StateKey s) const;

  friend bool operator==(const QTables&, const QTables&) = default;

 private:
  std::vector<std::vector<MultiAction>> sets_;
  std::vector<int> set_of_;  // -1 for terminal states
  std::vector<std::vector<double>> cost_;
  std::vector<std::vector<double>> opt_;
};

/// CSV dump with header `table,state,action,value`; `table` is cost or opt.
void write_q_tables_csv(std::ostream& out, const QTables& q, const BridgesEnv& env);

}  // namespace multicopy
