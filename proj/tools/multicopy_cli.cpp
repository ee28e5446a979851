// Command line driver: train, sweep and bandit subcommands.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multicopy/bandit.hpp"
#include "multicopy/config.hpp"
#include "multicopy/csv.hpp"
#include "multicopy/harness.hpp"
#include "multicopy/multicopy_agent.hpp"

using namespace multicopy;

namespace {

// Flag values are collected first and applied after the config file, so an
// explicit flag always wins.
struct ExperimentFlags {
  std::string config;
  std::string algorithm;
  std::size_t training_episodes = 0, testing_episodes = 0, trials = 0;
  bool long_run = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double noise = 0, step_cost = 0, fall_cost = 0;
  int max_actions = 0, max_steps = 0;
  bool allow_duplicates = false, broken_mode = false;
  std::vector<std::function<void(ExperimentSpec&)>> setters;

  void attach(CLI::App& app) {
    app.add_option("-c,--config", config, "key = value config file")->check(CLI::ExistingFile);
    add(app, "--algorithm", algorithm, "multicopy or joint_action",
        [this](ExperimentSpec& s) { s.algorithm = parse_algorithm(algorithm); });
    add(app, "--training-episodes", training_episodes, "training episodes per trial",
        [this](ExperimentSpec& s) { s.training_episodes = training_episodes; });
    add(app, "--testing-episodes", testing_episodes, "testing episodes per trial",
        [this](ExperimentSpec& s) { s.testing_episodes = testing_episodes; });
    add(app, "--trials", trials, "independent trials",
        [this](ExperimentSpec& s) { s.trials = trials; });
    add(app, "--seed", seed, "seed of trial 0; trial i uses seed + i",
        [this](ExperimentSpec& s) { s.seed_base = seed; });
    add(app, "--threads", threads, "worker threads, 0 = all cores",
        [this](ExperimentSpec& s) { s.threads = threads; });
    add(app, "--noise", noise, "probability of a sideways slip",
        [this](ExperimentSpec& s) { s.grid.noise = noise; });
    add(app, "--step-cost", step_cost, "reward per step (<= 0)",
        [this](ExperimentSpec& s) { s.grid.step_cost = step_cost; });
    add(app, "--fall-cost", fall_cost, "reward for falling (<= 0)",
        [this](ExperimentSpec& s) { s.grid.fall_cost = fall_cost; });
    add(app, "--max-actions", max_actions, "largest multiaction at the start",
        [this](ExperimentSpec& s) { s.grid.max_actions = max_actions; });
    add(app, "--max-steps", max_steps, "step cap per copy",
        [this](ExperimentSpec& s) { s.grid.max_steps_per_copy = max_steps; });
    flag(app, "--long-run", long_run, "train for 50000 episodes",
         [this](ExperimentSpec& s) { s.long_run = long_run; });
    flag(app, "--allow-duplicates", allow_duplicates, "allow repeated actions in a multiaction",
         [this](ExperimentSpec& s) { s.grid.allow_duplicates = allow_duplicates; });
    flag(app, "--broken", broken_mode, "break one random bridge per episode",
         [this](ExperimentSpec& s) { s.grid.broken_mode = broken_mode; });
  }

  template <typename T>
  void add(CLI::App& app, const std::string& name, T& target, const std::string& help,
           std::function<void(ExperimentSpec&)> set) {
    auto* opt = app.add_option(name, target, help);
    setters.push_back([opt, set](ExperimentSpec& s) {
      if (opt->count() > 0) set(s);
    });
  }

  void flag(CLI::App& app, const std::string& name, bool& target, const std::string& help,
            std::function<void(ExperimentSpec&)> set) {
    auto* opt = app.add_flag(name + ",!" + "--no-" + name.substr(2), target, help);
    setters.push_back([opt, set](ExperimentSpec& s) {
      if (opt->count() > 0) set(s);
    });
  }

  // Returns the config entries that are not experiment or grid keys.
  std::vector<ConfigEntry> build(ExperimentSpec& spec, const std::vector<ConfigEntry>& entries) {
    auto rest = apply_experiment_config(spec, entries);
    for (auto& set : setters) set(spec);
    spec.validate();
    return rest;
  }
};

std::vector<ConfigEntry> load_config(const std::string& path) {
  return path.empty() ? std::vector<ConfigEntry>{} : read_config_file(path);
}

[[noreturn]] void reject(const ConfigEntry& e) {
  throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
}

template <typename T, typename Parse>
std::vector<T> split_list(const ConfigEntry& e, Parse parse) {
  std::istringstream in(e.value);
  std::vector<T> out;
  for (std::string word; in >> word;) out.push_back(parse(ConfigEntry{e.key, word, e.line}));
  if (out.empty()) throw ConfigError("line " + std::to_string(e.line) + ": " + e.key + " is empty");
  return out;
}

void print_cell(const CellResult& c) {
  std::cout << std::fixed << std::setprecision(3) << "noise " << c.noise << "  cost "
            << c.step_cost << "  " << std::setw(12) << std::left << to_string(c.algorithm)
            << std::right << "  mean return " << std::setw(9) << c.mean_return << "  best "
            << c.modal_multiaction << " (" << c.modal_proportion << ")\n";
  std::cout.unsetf(std::ios::floatfield);
}

int cmd_train(ExperimentFlags& flags, const std::string& out_dir, const std::string& q_dump) {
  ExperimentSpec spec;
  for (const auto& e : flags.build(spec, load_config(flags.config))) reject(e);

  SweepSpec sweep;
  sweep.base = spec;
  sweep.noise_values = {spec.grid.noise};
  sweep.step_costs = {spec.grid.step_cost};
  sweep.algorithms = {spec.algorithm};
  const SweepResult result = run_sweep(sweep);
  const CellResult& cell = result.cells.front();
  print_cell(cell);
  for (const auto& f : cell.frequent) std::cout << "  " << f.label << "  " << f.proportion << "\n";

  if (!out_dir.empty()) {
    emit(result, out_dir);
    std::cout << "wrote " << out_dir << "\n";
  }
  if (!q_dump.empty()) {
    if (spec.algorithm != Algorithm::Multicopy)
      throw std::invalid_argument("--dump-q needs the multicopy algorithm");
    std::ofstream out(q_dump);
    if (!out) throw std::runtime_error("cannot write " + q_dump);
    const BridgesEnv env(spec.grid);
    write_q_tables_csv(out, train(spec.grid, spec.effective_training_episodes(), spec.trial_seed(0)),
                       env);
  }
  return 0;
}

int cmd_sweep(ExperimentFlags& flags, SweepSpec sweep, const std::string& out_dir, bool noise_set,
              bool costs_set, bool algorithms_set) {
  ExperimentSpec spec;
  for (const auto& e : flags.build(spec, load_config(flags.config))) {
    if (e.key == "noise_values") {
      if (!noise_set) sweep.noise_values = split_list<double>(e, parse_real);
    } else if (e.key == "step_costs") {
      if (!costs_set) sweep.step_costs = split_list<double>(e, parse_real);
    } else if (e.key == "algorithms") {
      if (!algorithms_set)
        sweep.algorithms = split_list<Algorithm>(e, [](const ConfigEntry& w) {
          try {
            return parse_algorithm(w.value);
          } catch (const std::invalid_argument& ex) {
            throw ConfigError("line " + std::to_string(w.line) + ": " + ex.what());
          }
        });
    } else {
      reject(e);
    }
  }
  sweep.base = spec;
  sweep.validate();
  const auto result = run_sweep(sweep, print_cell);
  emit(result, out_dir);
  std::cout << "wrote " << out_dir << "\n";
  return 0;
}

void write_bandit_csv(std::ostream& out, const std::vector<bandit::TableRow>& rows) {
  csv::write_row(out, {"combo", "estimate", "oracle"});
  for (const auto& r : rows)
    csv::write_row(out, {r.combo, csv::real(r.estimate.mean),
                         r.oracle ? csv::real(*r.oracle) : std::string()});
}

int cmd_bandit(int table, std::size_t samples, std::uint64_t seed, const std::string& csv_path) {
  const auto rows = bandit::reproduce_table(table, samples, seed);
  std::cout << "table " << table << ", " << samples << " samples, seed " << seed << "\n";
  std::cout << std::fixed << std::setprecision(3);
  for (const auto& r : rows) {
    std::cout << std::setw(12) << std::left << r.combo << std::right << std::setw(10)
              << r.estimate.mean << " +- " << std::setw(6) << r.estimate.std_error;
    if (r.oracle) std::cout << "   exact " << std::setw(9) << *r.oracle;
    std::cout << "\n";
  }
  std::cout.unsetf(std::ios::floatfield);
  std::cout << "\n";
  write_bandit_csv(std::cout, rows);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    write_bandit_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicopy reinforcement learning experiments"};
  app.require_subcommand(1);

  ExperimentFlags train_flags;
  std::string train_out, q_dump;
  auto* train_cmd = app.add_subcommand("train", "run one experiment and report the test return");
  train_flags.attach(*train_cmd);
  train_cmd->add_option("-o,--out", train_out, "directory for episodes.csv, cells.csv, manifest.json");
  train_cmd->add_option("--dump-q", q_dump, "write trial 0's Q tables as CSV (multicopy only)");

  ExperimentFlags sweep_flags;
  SweepSpec sweep;
  std::string sweep_out = "results";
  std::vector<std::string> algorithm_names;
  auto* sweep_cmd = app.add_subcommand("sweep", "noise x cost grid for one or both algorithms");
  sweep_flags.attach(*sweep_cmd);
  auto* noise_opt = sweep_cmd->add_option("--noise-values", sweep.noise_values, "noise levels");
  auto* costs_opt = sweep_cmd->add_option("--step-costs", sweep.step_costs, "step costs");
  auto* algos_opt =
      sweep_cmd->add_option("--algorithms", algorithm_names, "multicopy and/or joint_action");
  sweep_cmd->add_option("-o,--out", sweep_out, "output directory")->capture_default_str();

  int table = 1;
  std::size_t samples = bandit::kDefaultSamples;
  std::uint64_t bandit_seed = 1;
  auto* bandit_cmd = app.add_subcommand("bandit", "reproduce a bandit expected-max table");
  bandit_cmd->add_option("--table", table, "table number")->check(CLI::IsMember({1, 2, 3}))
      ->required();
  bandit_cmd->add_option("--samples", samples, "Monte Carlo samples per row")
      ->check(CLI::PositiveNumber)->capture_default_str();
  bandit_cmd->add_option("--seed", bandit_seed, "sampling seed")->capture_default_str();
  std::string bandit_csv;
  bandit_cmd->add_option("--csv", bandit_csv, "also write the CSV rows to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return cmd_train(train_flags, train_out, q_dump);
    if (*sweep_cmd) {
      if (!algorithm_names.empty()) {
        sweep.algorithms.clear();
        for (const auto& n : algorithm_names) sweep.algorithms.push_back(parse_algorithm(n));
      }
      return cmd_sweep(sweep_flags, sweep, sweep_out, noise_opt->count() > 0,
                       costs_opt->count() > 0, algos_opt->count() > 0);
    }
    return cmd_bandit(table, samples, bandit_seed, bandit_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
