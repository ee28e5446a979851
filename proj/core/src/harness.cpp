#include "multicopy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "multicopy/csv.hpp"
#include "multicopy/joint_action_agent.hpp"
#include "multicopy/multicopy_agent.hpp"

#ifndef MULTICOPY_GIT_DESCRIBE
#define MULTICOPY_GIT_DESCRIBE "unknown"
#endif

namespace multicopy {

std::string to_string(Algorithm a) {
  return a == Algorithm::Multicopy ? "multicopy" : "joint_action";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "multicopy") return Algorithm::Multicopy;
  if (name == "joint_action") return Algorithm::JointAction;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected multicopy or joint_action)");
}

void ExperimentSpec::validate() const {
  grid.validate();
  if (effective_training_episodes() == 0)
    throw std::invalid_argument("training_episodes must be positive");
  if (testing_episodes == 0) throw std::invalid_argument("testing_episodes must be positive");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (!(schedules.discount >= 0.0 && schedules.discount <= 1.0))
    throw std::invalid_argument("discount must lie in [0, 1]");
  if (!(schedules.temperature_end > 0.0 && schedules.temperature_start > 0.0))
    throw std::invalid_argument("temperatures must be positive");
}

std::vector<ConfigEntry> apply_experiment_config(ExperimentSpec& spec,
                                                 std::span<const ConfigEntry> entries) {
  std::vector<ConfigEntry> rest;
  auto positive = [](const ConfigEntry& e) {
    const auto v = parse_integer(e);
    if (v <= 0) throw ConfigError("line " + std::to_string(e.line) + ": " + e.key + " must be positive");
    return static_cast<std::size_t>(v);
  };
  for (const auto& e : entries) {
    if (e.key == "algorithm") {
      try {
        spec.algorithm = parse_algorithm(e.value);
      } catch (const std::invalid_argument& ex) {
        throw ConfigError("line " + std::to_string(e.line) + ": " + ex.what());
      }
    } else if (e.key == "training_episodes") {
      spec.training_episodes = positive(e);
    } else if (e.key == "testing_episodes") {
      spec.testing_episodes = positive(e);
    } else if (e.key == "trials") {
      spec.trials = positive(e);
    } else if (e.key == "long_run") {
      spec.long_run = parse_flag(e);
    } else if (e.key == "seed") {
      spec.seed_base = static_cast<std::uint64_t>(parse_integer(e));
    } else {
      rest.push_back(e);
    }
  }
  return apply_grid_config(spec.grid, rest);
}

namespace {

template <class Agent>
TrialRecord run_trial_with(const ExperimentSpec& spec, std::size_t trial) {
  Schedules schedules = spec.schedules;
  schedules.episodes = spec.effective_training_episodes();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = spec.trial_seed(trial);
  Agent agent(spec.grid, schedules, rec.seed);
  rec.training_returns.reserve(schedules.episodes);
  for (std::size_t e = 0; e < schedules.episodes; ++e)
    rec.training_returns.push_back(agent.train_episode());
  rec.greedy_start = agent.greedy_start();
  rec.greedy_start_label = agent.env().multiaction_label(GridState::start(), rec.greedy_start);
  rec.testing_returns.reserve(spec.testing_episodes);
  for (std::size_t e = 0; e < spec.testing_episodes; ++e)
    rec.testing_returns.push_back(agent.test_episode());
  return rec;
}

}  // namespace

TrialRecord run_trial(const ExperimentSpec& spec, std::size_t trial) {
  return spec.algorithm == Algorithm::Multicopy ? run_trial_with<MulticopyAgent>(spec, trial)
                                                : run_trial_with<JointActionAgent>(spec, trial);
}

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<TrialRecord> records(spec.trials);
  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < spec.trials;) {
      try {
        records[i] = run_trial(spec, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

void SweepSpec::validate() const {
  if (noise_values.empty()) throw std::invalid_argument("sweep needs at least one noise value");
  if (step_costs.empty()) throw std::invalid_argument("sweep needs at least one step cost");
  if (algorithms.empty()) throw std::invalid_argument("sweep needs at least one algorithm");
  base.validate();
}

CellResult summarize_cell(const ExperimentSpec& spec, std::vector<TrialRecord> trials) {
  CellResult cell;
  cell.noise = spec.grid.noise;
  cell.step_cost = spec.grid.step_cost;
  cell.algorithm = spec.algorithm;

  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& t : trials)
    for (double r : t.testing_returns) {
      sum += r;
      ++count;
    }
  cell.mean_return = count ? sum / static_cast<double>(count) : 0.0;

  std::map<MultiAction, std::pair<std::string, std::size_t>> tally;
  for (const auto& t : trials) {
    auto& slot = tally[t.greedy_start];
    slot.first = t.greedy_start_label;
    ++slot.second;
  }
  // std::map iterates in canonical order, so stable_sort keeps that order
  // among equal counts.
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (const auto& [m, entry] : tally) ranked.push_back(entry);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const double n = static_cast<double>(trials.size());
  if (!ranked.empty()) {
    cell.modal_multiaction = ranked.front().first;
    cell.modal_proportion = static_cast<double>(ranked.front().second) / n;
  }
  for (const auto& [label, c] : ranked) {
    const double share = static_cast<double>(c) / n;
    if (share > 0.2) cell.frequent.push_back(ActionShare{label, share});
  }
  cell.trials = std::move(trials);
  return cell;
}

SweepResult run_sweep(const SweepSpec& sweep, const ProgressFn& progress) {
  sweep.validate();
  SweepResult out{sweep, {}};
  for (double noise : sweep.noise_values)
    for (double cost : sweep.step_costs)
      for (Algorithm algorithm : sweep.algorithms) {
        ExperimentSpec spec = sweep.base;
        spec.grid.noise = noise;
        spec.grid.step_cost = cost;
        spec.algorithm = algorithm;
        out.cells.push_back(summarize_cell(spec, run_experiment(spec)));
        if (progress) progress(out.cells.back());
      }
  return out;
}

std::vector<double> rolling_average(std::span<const double> series, std::size_t window) {
  if (window == 0) throw std::invalid_argument("rolling window must be at least 1");
  std::vector<double> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) sum += series[j];
    out.push_back(sum / static_cast<double>(i + 1 - first));
  }
  return out;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json grid_json(const GridSpec& g) {
  nlohmann::ordered_json bridges = nlohmann::ordered_json::array();
  for (const auto& b : g.bridges)
    bridges.push_back({{"name", b.name},
                       {"length", b.length},
                       {"width", b.width},
                       {"success_reward", b.success_reward}});
  return {{"bridges", bridges},
          {"step_cost", g.step_cost},
          {"fall_cost", g.fall_cost},
          {"noise", g.noise},
          {"max_actions", g.max_actions},
          {"allow_duplicates", g.allow_duplicates},
          {"broken_mode", g.broken_mode},
          {"max_steps_per_copy", g.max_steps_per_copy}};
}

}  // namespace

void emit(const SweepResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  {
    auto out = open_for_write(out_dir / "episodes.csv");
    csv::write_row(out, {"noise", "cost", "algorithm", "trial", "episode", "phase", "return"});
    for (const auto& cell : result.cells) {
      const auto noise = csv::real(cell.noise);
      const auto cost = csv::real(cell.step_cost);
      const auto algorithm = to_string(cell.algorithm);
      for (const auto& t : cell.trials) {
        const auto trial = std::to_string(t.trial);
        for (std::size_t e = 0; e < t.training_returns.size(); ++e)
          csv::write_row(out, {noise, cost, algorithm, trial, std::to_string(e), "train",
                               csv::real(t.training_returns[e])});
        for (std::size_t e = 0; e < t.testing_returns.size(); ++e)
          csv::write_row(out, {noise, cost, algorithm, trial, std::to_string(e), "test",
                               csv::real(t.testing_returns[e])});
      }
    }
    if (!out) throw std::runtime_error("failed writing episodes.csv");
  }

  {
    auto out = open_for_write(out_dir / "cells.csv");
    csv::write_row(out, {"noise", "cost", "algorithm", "mean_return", "modal_multiaction",
                         "modal_proportion", "frequent_multiactions"});
    for (const auto& cell : result.cells) {
      std::string frequent;
      for (const auto& s : cell.frequent) {
        if (!frequent.empty()) frequent += ';';
        frequent += s.label + ":" + csv::real(s.proportion);
      }
      csv::write_row(out, {csv::real(cell.noise), csv::real(cell.step_cost),
                           to_string(cell.algorithm), csv::real(cell.mean_return),
                           cell.modal_multiaction, csv::real(cell.modal_proportion), frequent});
    }
    if (!out) throw std::runtime_error("failed writing cells.csv");
  }

  {
    const auto& spec = result.spec;
    const auto& base = spec.base;
    nlohmann::ordered_json algorithms = nlohmann::ordered_json::array();
    for (auto a : spec.algorithms) algorithms.push_back(to_string(a));
    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < base.trials; ++t) seeds.push_back(base.trial_seed(t));
    nlohmann::ordered_json manifest = {
        {"schema_version", kSchemaVersion},
        {"git_describe", MULTICOPY_GIT_DESCRIBE},
        {"created_at", utc_timestamp()},
        {"sweep",
         {{"noise_values", spec.noise_values},
          {"step_costs", spec.step_costs},
          {"algorithms", algorithms}}},
        {"experiment",
         {{"training_episodes", base.effective_training_episodes()},
          {"testing_episodes", base.testing_episodes},
          {"trials", base.trials},
          {"long_run", base.long_run},
          {"seed_base", base.seed_base},
          {"trial_seeds", seeds},
          {"schedules",
           {{"lr_cost_start", base.schedules.lr_cost_start},
            {"lr_opt_start", base.schedules.lr_opt_start},
            {"temperature_start", base.schedules.temperature_start},
            {"temperature_end", base.schedules.temperature_end},
            {"discount", base.schedules.discount}}}}},
        {"grid", grid_json(base.grid)},
        {"files",
         {{"episodes.csv", "noise,cost,algorithm,trial,episode,phase,return"},
          {"cells.csv",
           "noise,cost,algorithm,mean_return,modal_multiaction,modal_proportion,"
           "frequent_multiactions"}}}};
    auto out = open_for_write(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing manifest.json");
  }
}

}  // namespace multicopy
