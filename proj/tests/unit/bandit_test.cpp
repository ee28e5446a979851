#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expected_max_integral.hpp"
#include "multicopy/bandit.hpp"

namespace bd = multicopy::bandit;
using Arm = bd::ArmDistribution;

namespace {

double oracle_of(std::vector<Arm> arms) { return bd::expected_max_oracle(arms).value(); }

}  // namespace

TEST(Oracle, ClosedFormsMatchNumericalIntegration) {
  const std::vector<std::vector<Arm>> cases{
      {Arm::normal(10, 1), Arm::normal(5, 30)},
      {Arm::normal(5, 30), Arm::normal(5, 30)},
      {Arm::normal(10, 1), Arm::normal(10, 1)},
      {Arm::constant(100), Arm::exponential(70)},
      {Arm::constant(5), Arm::shifted_exponential(10, 70)},
      {Arm::exponential(70), Arm::exponential(70)},
      {Arm::exponential(70), Arm::shifted_exponential(10, 70)},
      {Arm::shifted_exponential(3, 20), Arm::exponential(50)},
      {Arm::constant(110), Arm::shifted_exponential(10, 70)},
      {Arm::constant(2), Arm::normal(0, 3)},
  };
  for (const auto& arms : cases) {
    const double exact = oracle_of(arms);
    const double numeric = oracle::integrated_expected_max(arms, -400.0, 3000.0);
    EXPECT_NEAR(exact, numeric, 2e-3) << arms[0].describe() << " vs " << arms[1].describe();
  }
}

TEST(Oracle, KnownValues) {
  EXPECT_NEAR(oracle_of({Arm::normal(10, 1), Arm::normal(5, 30)}), 19.64, 0.01);
  EXPECT_NEAR(oracle_of({Arm::normal(5, 30), Arm::normal(5, 30)}), 5 + 30 / std::sqrt(M_PI), 1e-9);
  EXPECT_DOUBLE_EQ(oracle_of({Arm::constant(100), Arm::constant(100)}), 100.0);
  EXPECT_NEAR(oracle_of({Arm::constant(100), Arm::exponential(70)}),
              100 + 70 * std::exp(-100.0 / 70.0), 1e-9);
  EXPECT_NEAR(oracle_of({Arm::exponential(70), Arm::exponential(70)}), 105.0, 1e-9);
  EXPECT_NEAR(oracle_of({Arm::exponential(70), Arm::shifted_exponential(10, 70)}), 110.34, 0.01);
  EXPECT_DOUBLE_EQ(oracle_of({Arm::normal(7, 2)}), 7.0);
}

TEST(Oracle, UnsupportedCombinations) {
  const std::vector<Arm> three{Arm::constant(1), Arm::constant(2), Arm::constant(3)};
  EXPECT_FALSE(bd::expected_max_oracle(three).has_value());
  const std::vector<Arm> mixed{Arm::normal(0, 1), Arm::exponential(1)};
  EXPECT_FALSE(bd::expected_max_oracle(mixed).has_value());
}

TEST(Sampling, AgreesWithOracleWithinFourStandardErrors) {
  const std::vector<std::vector<Arm>> cases{
      {Arm::normal(10, 1)},
      {Arm::normal(10, 1), Arm::normal(5, 30)},
      {Arm::normal(5, 30), Arm::normal(5, 30)},
      {Arm::constant(100), Arm::exponential(70)},
      {Arm::exponential(70), Arm::exponential(70)},
      {Arm::exponential(70), Arm::shifted_exponential(10, 70)},
      {Arm::constant(110), Arm::shifted_exponential(10, 70)},
  };
  std::uint64_t seed = 100;
  for (const auto& arms : cases) {
    const auto est = bd::sample_max_estimate(arms, bd::kPrecisionSamples, seed++);
    EXPECT_LE(std::abs(est.mean - oracle_of(arms)), 4 * est.std_error + 1e-12)
        << arms[0].describe();
  }
}

TEST(Sampling, SingleNormalPrecision) {
  const std::vector<Arm> arms{Arm::normal(10, 1)};
  EXPECT_NEAR(bd::sample_max_estimate(arms, 100'000, 5).mean, 10.0, 0.02);
}

TEST(Sampling, DeterministicPerSeed) {
  const std::vector<Arm> arms{Arm::normal(5, 30), Arm::exponential(70)};
  const auto a = bd::sample_max_estimate(arms, 1000, 42);
  const auto b = bd::sample_max_estimate(arms, 1000, 42);
  const auto c = bd::sample_max_estimate(arms, 1000, 43);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.mean, c.mean);
}

TEST(Sampling, AddingAnArmNeverLowersTheMax) {
  std::vector<Arm> arms{Arm::normal(5, 30)};
  const std::vector<Arm> extra{Arm::normal(10, 1), Arm::exponential(70), Arm::constant(-5),
                               Arm::shifted_exponential(1, 2)};
  auto before = bd::sample_max_estimate(arms, 20'000, 9);
  for (const auto& x : extra) {
    arms.push_back(x);
    const auto after = bd::sample_max_estimate(arms, 20'000, 9);
    EXPECT_GE(after.mean, before.mean - 2 * std::max(before.std_error, after.std_error));
    before = after;
  }
}

TEST(Sampling, RejectsEmptyInputs) {
  EXPECT_THROW(bd::sample_max_estimate({}, 10, 1), std::invalid_argument);
  const std::vector<Arm> arms{Arm::constant(1)};
  EXPECT_THROW(bd::sample_max_estimate(arms, 0, 1), std::invalid_argument);
}

TEST(Distributions, RejectInvalidParameters) {
  EXPECT_THROW(Arm::normal(0, 0), std::invalid_argument);
  EXPECT_THROW(Arm::exponential(-1), std::invalid_argument);
  EXPECT_THROW(Arm::shifted_exponential(0, 0), std::invalid_argument);
}

TEST(ArmSet, LabelsAreUnique) {
  bd::ArmSet s;
  s.add("S", Arm::constant(1));
  EXPECT_THROW(s.add("S", Arm::constant(2)), std::invalid_argument);
}

TEST(Tables, RowsAndRoundedValues) {
  const auto t1 = bd::reproduce_table(1, bd::kPrecisionSamples, 1);
  ASSERT_EQ(t1.size(), 5u);
  const std::vector<std::string> labels{"S", "N", "(S,S)", "(S,N)", "(N,N)"};
  const std::vector<double> rounded{10, 5, 11, 20, 22};
  for (std::size_t i = 0; i < t1.size(); ++i) {
    EXPECT_EQ(t1[i].combo, labels[i]);
    EXPECT_EQ(std::round(*t1[i].oracle), rounded[i]);
  }
  const auto t2 = bd::reproduce_table(2, bd::kDefaultSamples, 1);
  ASSERT_EQ(t2.size(), 5u);
  EXPECT_EQ(t2[3].combo, "(C,E)");
  EXPECT_NEAR(*t2[3].oracle, 116.78, 0.01);
  const auto t3 = bd::reproduce_table(3, bd::kDefaultSamples, 1);
  ASSERT_EQ(t3.size(), 4u);
  EXPECT_EQ(t3[1].combo, "(a1*,a2*)");
  EXPECT_THROW(bd::reproduce_table(4, 10, 1), std::invalid_argument);
}

TEST(Tables, RowsUseIndependentStreams) {
  // Asking for a larger table must not change the rows already present.
  bd::ArmSet arms{{"X", Arm::normal(0, 1)}, {"Y", Arm::exponential(3)}};
  const auto small = bd::table_report(arms, 1, 500, 3);
  const auto large = bd::table_report(arms, 2, 500, 3);
  for (std::size_t i = 0; i < small.size(); ++i)
    EXPECT_EQ(small[i].estimate.mean, large[i].estimate.mean);
}

TEST(Shadowing, DistractorsHideTheBestPair) {
  const bd::ShadowedConstruction c;
  std::vector<Arm> pool(9, c.distractor_second);
  pool.push_back(c.star_second);
  const double plain = bd::shadowed_value_estimate(c.distractor_first, pool, 100'000, 3);
  const double star = bd::shadowed_value_estimate(c.star_first, pool, 100'000, 4);
  EXPECT_GT(plain - star, 3.0);
  const double best = oracle_of({c.star_first, c.star_second});
  for (const auto& a : {c.star_first, c.distractor_first})
    for (const auto& b : {c.star_second, c.distractor_second})
      if (!(a.describe() == c.star_first.describe() && b.describe() == c.star_second.describe()))
        EXPECT_GT(best, oracle_of({a, b}));
}

TEST(Shadowing, LimitsAsDistractorsGrow) {
  const bd::ShadowedConstruction c;
  std::vector<Arm> pool(400, c.distractor_second);
  pool.push_back(c.star_second);
  EXPECT_NEAR(bd::shadowed_value_estimate(c.distractor_first, pool, 100'000, 1), 116.78, 1.0);
  EXPECT_NEAR(bd::shadowed_value_estimate(c.star_first, pool, 100'000, 1), 110.0, 0.1);
}

TEST(Shadowing, SingleZeroPartner) {
  const std::vector<Arm> pool{Arm::constant(0)};
  const auto star = Arm::normal(1, 2);
  const std::vector<Arm> pair{star, Arm::constant(0)};
  EXPECT_NEAR(bd::shadowed_value_estimate(star, pool, 100'000, 8), oracle_of(pair), 0.03);
}
