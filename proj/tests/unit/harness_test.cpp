#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "multicopy/csv.hpp"
#include "multicopy/harness.hpp"

namespace mc = multicopy;
namespace fs = std::filesystem;

namespace {

mc::ExperimentSpec small_spec(mc::Algorithm a = mc::Algorithm::Multicopy) {
  mc::ExperimentSpec s;
  s.algorithm = a;
  s.grid.max_actions = 3;
  s.grid.noise = 0.2;
  s.training_episodes = 150;
  s.testing_episodes = 7;
  s.trials = 4;
  s.seed_base = 11;
  return s;
}

mc::SweepSpec small_sweep() {
  mc::SweepSpec sw;
  sw.noise_values = {0.0, 0.3};
  sw.step_costs = {-1.0, -4.0};
  sw.base = small_spec();
  return sw;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  return mc::csv::read(in);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("multicopy_harness_" + std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST(RollingAverage, Examples) {
  const std::vector<double> two{0.0, 10.0};
  EXPECT_EQ(mc::rolling_average(two, 2), (std::vector<double>{0.0, 5.0}));
  const std::vector<double> constant(100, 0.1);
  for (double v : mc::rolling_average(constant)) EXPECT_DOUBLE_EQ(v, 0.1);
  const std::vector<double> series{3, -1, 4, 1, -5, 9};
  EXPECT_EQ(mc::rolling_average(series, 1), series);
  EXPECT_EQ(mc::rolling_average(series, 3)[4], (4.0 + 1.0 - 5.0) / 3.0);
  EXPECT_THROW(mc::rolling_average(series, 0), std::invalid_argument);
}

TEST(Algorithm, Names) {
  EXPECT_EQ(mc::parse_algorithm("joint_action"), mc::Algorithm::JointAction);
  EXPECT_EQ(mc::to_string(mc::Algorithm::Multicopy), "multicopy");
  EXPECT_THROW(mc::parse_algorithm("dqn"), std::invalid_argument);
}

TEST(Experiment, SmallestRun) {
  auto s = small_spec();
  s.trials = 1;
  s.training_episodes = 1;
  s.testing_episodes = 1;
  const auto recs = mc::run_experiment(s);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].training_returns.size(), 1u);
  EXPECT_EQ(recs[0].testing_returns.size(), 1u);
  EXPECT_EQ(recs[0].seed, 11u);
}

TEST(Experiment, RecordsMatchSpec) {
  for (auto a : {mc::Algorithm::Multicopy, mc::Algorithm::JointAction}) {
    auto s = small_spec(a);
    s.threads = 3;
    const auto recs = mc::run_experiment(s);
    ASSERT_EQ(recs.size(), 4u);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      EXPECT_EQ(recs[i].trial, i);
      EXPECT_EQ(recs[i].seed, s.trial_seed(i));
      EXPECT_EQ(recs[i].training_returns.size(), 150u);
      EXPECT_EQ(recs[i].testing_returns.size(), 7u);
      EXPECT_FALSE(recs[i].greedy_start_label.empty());
    }
  }
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  auto s = small_spec();
  s.threads = 1;
  const auto serial = mc::run_experiment(s);
  s.threads = 4;
  const auto parallel = mc::run_experiment(s);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].training_returns, parallel[i].training_returns);
    EXPECT_EQ(serial[i].testing_returns, parallel[i].testing_returns);
    EXPECT_EQ(serial[i].greedy_start, parallel[i].greedy_start);
  }
  EXPECT_EQ(mc::run_trial(s, 2).testing_returns, serial[2].testing_returns);
}

TEST(Experiment, InvalidSpecs) {
  auto s = small_spec();
  s.trials = 0;
  EXPECT_THROW(mc::run_experiment(s), std::invalid_argument);
  s = small_spec();
  s.testing_episodes = 0;
  EXPECT_THROW(mc::run_experiment(s), std::invalid_argument);
  s = small_spec();
  s.grid.noise = -0.1;
  EXPECT_THROW(mc::run_experiment(s), std::invalid_argument);
  auto sw = small_sweep();
  sw.step_costs.clear();
  EXPECT_THROW(mc::run_sweep(sw), std::invalid_argument);
}

TEST(Sweep, OneCellEqualsExperimentAggregate) {
  mc::SweepSpec sw;
  sw.base = small_spec();
  sw.noise_values = {0.2};
  sw.step_costs = {-2.0};
  sw.algorithms = {mc::Algorithm::JointAction};
  const auto res = mc::run_sweep(sw);
  ASSERT_EQ(res.cells.size(), 1u);
  auto s = small_spec(mc::Algorithm::JointAction);
  const auto cell = mc::summarize_cell(s, mc::run_experiment(s));
  EXPECT_EQ(res.cells[0].mean_return, cell.mean_return);
  EXPECT_EQ(res.cells[0].modal_multiaction, cell.modal_multiaction);
  EXPECT_EQ(res.cells[0].modal_proportion, cell.modal_proportion);
}

TEST(Sweep, CellOrderAndProportions) {
  int calls = 0;
  const auto res = mc::run_sweep(small_sweep(), [&](const mc::CellResult&) { ++calls; });
  ASSERT_EQ(res.cells.size(), 8u);
  EXPECT_EQ(calls, 8);
  EXPECT_EQ(res.cells[0].noise, 0.0);
  EXPECT_EQ(res.cells[1].algorithm, mc::Algorithm::JointAction);
  EXPECT_EQ(res.cells[2].step_cost, -4.0);
  EXPECT_EQ(res.cells[4].noise, 0.3);
  for (const auto& c : res.cells) {
    EXPECT_GE(c.modal_proportion, 0.0);
    EXPECT_LE(c.modal_proportion, 1.0);
    double total = 0.0;
    for (const auto& f : c.frequent) {
      EXPECT_GT(f.proportion, 0.2);
      total += f.proportion;
    }
    EXPECT_LE(total, 1.0 + 1e-12);
  }
}

TEST(Summarize, ModalTiesUseCanonicalOrder) {
  auto s = small_spec();
  std::vector<mc::TrialRecord> recs(4);
  const mc::MultiAction a = mc::MultiAction::single(mc::ActionId(0));
  const mc::MultiAction bc({mc::ActionId(1), mc::ActionId(2)}, false);
  recs[0].greedy_start = bc;
  recs[0].greedy_start_label = "B,C";
  recs[1] = recs[0];
  recs[2].greedy_start = a;
  recs[2].greedy_start_label = "A";
  recs[3] = recs[2];
  recs[0].testing_returns = {1.0, 2.0};
  recs[2].testing_returns = {4.0};
  const auto cell = mc::summarize_cell(s, recs);
  EXPECT_EQ(cell.modal_multiaction, "A");
  EXPECT_EQ(cell.modal_proportion, 0.5);
  ASSERT_EQ(cell.frequent.size(), 2u);
  EXPECT_EQ(cell.frequent[1].label, "B,C");
  EXPECT_EQ(cell.mean_return, 7.0 / 3.0);
}

TEST_F(TempDir, EmitWritesDocumentedFiles) {
  const auto res = mc::run_sweep(small_sweep());
  mc::emit(res, dir_);
  for (const char* f : {"episodes.csv", "cells.csv", "manifest.json"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;

  const auto episodes = read_csv(dir_ / "episodes.csv");
  EXPECT_EQ(episodes[0], (std::vector<std::string>{"noise", "cost", "algorithm", "trial",
                                                   "episode", "phase", "return"}));
  EXPECT_EQ(episodes.size(), 1 + 8 * 4 * (150 + 7));
  const auto cells = read_csv(dir_ / "cells.csv");
  EXPECT_EQ(cells[0], (std::vector<std::string>{"noise", "cost", "algorithm", "mean_return",
                                                "modal_multiaction", "modal_proportion",
                                                "frequent_multiactions"}));
  EXPECT_EQ(cells.size(), 9u);

  const auto manifest = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_EQ(manifest["schema_version"], mc::kSchemaVersion);
  EXPECT_EQ(manifest["experiment"]["trial_seeds"], (std::vector<int>{11, 12, 13, 14}));
  EXPECT_EQ(manifest["grid"]["bridges"].size(), 3u);
  EXPECT_TRUE(manifest.contains("git_describe"));
}

TEST_F(TempDir, CellMeansEqualTestingRows) {
  mc::emit(mc::run_sweep(small_sweep()), dir_);
  const auto episodes = read_csv(dir_ / "episodes.csv");
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (std::size_t i = 1; i < episodes.size(); ++i) {
    const auto& r = episodes[i];
    if (r[5] != "test") continue;
    auto& s = sums[r[0] + "|" + r[1] + "|" + r[2]];
    s.first += std::stod(r[6]);
    ++s.second;
  }
  const auto cells = read_csv(dir_ / "cells.csv");
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const auto& s = sums.at(cells[i][0] + "|" + cells[i][1] + "|" + cells[i][2]);
    EXPECT_EQ(std::stod(cells[i][3]), s.first / static_cast<double>(s.second));
  }
}

TEST_F(TempDir, CsvBytesAreReproducible) {
  const auto sw = small_sweep();
  mc::emit(mc::run_sweep(sw), dir_ / "a");
  mc::emit(mc::run_sweep(sw), dir_ / "b");
  for (const char* f : {"episodes.csv", "cells.csv"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(TempDir, UnwritableDirectory) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "file") << "x";
  EXPECT_THROW(mc::emit(mc::run_sweep(small_sweep()), dir_ / "file" / "sub"), std::runtime_error);
}
