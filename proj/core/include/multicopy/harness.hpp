#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "multicopy/boltzmann.hpp"
#include "multicopy/bridges.hpp"
#include "multicopy/config.hpp"

namespace multicopy {

enum class Algorithm { Multicopy, JointAction };

std::string to_string(Algorithm a);
/// Accepts "multicopy" and "joint_action". Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view name);

inline constexpr std::size_t kLongRunEpisodes = 50'000;
inline constexpr int kSchemaVersion = 1;

struct ExperimentSpec {
  Algorithm algorithm = Algorithm::Multicopy;
  GridSpec grid = GridSpec::three_bridges();
  std::size_t training_episodes = 7500;
  std::size_t testing_episodes = 500;
  std::size_t trials = 50;
  bool long_run = false;
  std::uint64_t seed_base = 1;
  /// Learning-rate/temperature/discount template; `episodes` is overwritten.
  Schedules schedules;
  /// Worker threads for trials; 0 picks the hardware concurrency.
  unsigned threads = 0;

  std::size_t effective_training_episodes() const {
    return long_run ? kLongRunEpisodes : training_episodes;
  }
  std::uint64_t trial_seed(std::size_t trial) const { return seed_base + trial; }
  /// Throws std::invalid_argument on non-positive counts or an invalid grid.
  void validate() const;
};

/// Applies experiment keys (algorithm, training_episodes, testing_episodes,
/// trials, long_run, seed) and grid keys; returns unrecognised entries.
std::vector<ConfigEntry> apply_experiment_config(ExperimentSpec& spec,
                                                 std::span<const ConfigEntry> entries);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<double> training_returns;
  std::vector<double> testing_returns;
  MultiAction greedy_start;
  std::string greedy_start_label;
};

/// Trains then tests one agent per trial (seed = seed_base + trial). Trials
/// may run concurrently; results are ordered by trial and depend only on the
/// spec.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec);

/// Same as run_experiment for a single trial index.
TrialRecord run_trial(const ExperimentSpec& spec, std::size_t trial);

struct SweepSpec {
  std::vector<double> noise_values{0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<double> step_costs{-1.0, -2.0, -4.0, -8.0};
  std::vector<Algorithm> algorithms{Algorithm::Multicopy, Algorithm::JointAction};
  ExperimentSpec base;

  void validate() const;
};

struct ActionShare {
  std::string label;
  double proportion = 0.0;
};

struct CellResult {
  double noise = 0.0;
  double step_cost = 0.0;
  Algorithm algorithm = Algorithm::Multicopy;
  /// Mean over every testing episode of every trial, trial-major order.
  double mean_return = 0.0;
  std::string modal_multiaction;
  double modal_proportion = 0.0;
  /// Greedy start multiactions best in more than 20% of trials, most
  /// frequent first.
  std::vector<ActionShare> frequent;
  std::vector<TrialRecord> trials;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<CellResult> cells;
};

/// Aggregates one experiment's trials into a cell.
CellResult summarize_cell(const ExperimentSpec& spec, std::vector<TrialRecord> trials);

using ProgressFn = std::function<void(const CellResult&)>;

/// Cross product noise × cost × algorithm, noise-major.
SweepResult run_sweep(const SweepSpec& sweep, const ProgressFn& progress = {});

/// Trailing mean; the first window-1 entries average what is available.
std::vector<double> rolling_average(std::span<const double> series, std::size_t window = 30);

/// Writes episodes.csv, cells.csv and manifest.json into `out_dir`, creating
/// it if needed. Throws std::runtime_error if a file cannot be written.
void emit(const SweepResult& result, const std::filesystem::path& out_dir);

}  // namespace multicopy
