#include <gtest/gtest.h>

#include <random>

#include "multicopy/episode_tree.hpp"
#include "path_enumeration.hpp"

namespace mc = multicopy;

namespace {

const mc::ActionId A(0), B(1);

// Split into two copies costing -1 each; both end one step later with
// optimization rewards 10 and 4.
mc::EpisodeTree two_copy_tree() {
  mc::EpisodeTree t(0.9);
  const auto root = t.add_root(0, mc::MultiAction({A, B}, false));
  const auto left = t.add_node(1, mc::MultiAction::single(A));
  t.add_edge(root, A, {-1.0, 0.0}, left);
  t.add_edge(left, A, {0.0, 10.0}, std::nullopt);
  const auto right = t.add_node(2, mc::MultiAction::single(A));
  t.add_edge(root, B, {-1.0, 0.0}, right);
  t.add_edge(right, A, {0.0, 4.0}, std::nullopt);
  return t;
}

mc::EpisodeTree single_path(const std::vector<mc::RewardSplit>& rewards, double gamma) {
  mc::EpisodeTree t(gamma);
  auto id = t.add_root(0, mc::MultiAction::single(A));
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (i + 1 == rewards.size()) {
      t.add_edge(id, A, rewards[i], std::nullopt);
    } else {
      const auto next = t.add_node(static_cast<mc::StateKey>(i + 1), mc::MultiAction::single(A));
      t.add_edge(id, A, rewards[i], next);
      id = next;
    }
  }
  return t;
}

}  // namespace

TEST(Returns, TwoCopyTree) {
  const auto t = two_copy_tree();
  EXPECT_NO_THROW(t.validate());
  EXPECT_DOUBLE_EQ(mc::cost_return(t), -2.0);
  EXPECT_DOUBLE_EQ(mc::optimization_return(t), 9.0);
  EXPECT_DOUBLE_EQ(mc::total_return(t), 7.0);
}

TEST(Returns, SinglePathCosts) {
  const auto t = single_path({{-1, 0}, {-1, 0}, {-1, 0}}, 1.0);
  EXPECT_DOUBLE_EQ(mc::cost_return(t), -3.0);
}

TEST(Returns, SinglePathOptimization) {
  const auto t = single_path({{0, 0}, {0, 0}, {0, 100}}, 0.9);
  EXPECT_NEAR(mc::optimization_return(t), 81.0, 1e-12);
}

TEST(Returns, ZeroRewardAndEmptyTrees) {
  EXPECT_EQ(mc::total_return(single_path({{0, 0}, {0, 0}}, 0.9)), 0.0);
  EXPECT_EQ(mc::total_return(mc::EpisodeTree(0.9)), 0.0);
}

TEST(Returns, PerCopyReturnsOfTwoCopyTree) {
  const auto t = two_copy_tree();
  const auto r = mc::per_copy_returns(t);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_DOUBLE_EQ(r[0].cost, -2.0);
  EXPECT_DOUBLE_EQ(r[0].optimization, 9.0);
  EXPECT_DOUBLE_EQ(r[1].optimization, 10.0);
  EXPECT_DOUBLE_EQ(r[2].optimization, 4.0);
  EXPECT_DOUBLE_EQ(r[1].cost, 0.0);
}

TEST(Returns, SingletonTreeIsOrdinaryDiscountedReturn) {
  const std::vector<mc::RewardSplit> rs{{-2, 0}, {-2, 0}, {-2, 0}, {0, 100}};
  double g = 0.0, d = 1.0;
  for (const auto& r : rs) {
    g += d * r.total();
    d *= 0.9;
  }
  EXPECT_NEAR(mc::total_return(single_path(rs, 0.9)), g, 1e-12);
}

TEST(Returns, MatchPathEnumerationOnRandomTrees) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_tree(rng, 4, 3, 0.9);
    ASSERT_NO_THROW(t.validate());
    const auto brute = oracle::enumerate_paths(t);
    EXPECT_NEAR(mc::cost_return(t), brute.cost, 1e-9);
    EXPECT_NEAR(mc::optimization_return(t), brute.optimization, 1e-9);
    EXPECT_EQ(mc::total_return(t), mc::cost_return(t) + mc::optimization_return(t));
    const auto per = mc::per_copy_returns(t);
    EXPECT_EQ(per[0].cost, mc::cost_return(t));
    EXPECT_EQ(per[0].optimization, mc::optimization_return(t));
  }
}

TEST(EpisodeTree, RejectsBackwardEdgesAndBadDiscount) {
  EXPECT_THROW(mc::EpisodeTree(1.5), std::invalid_argument);
  mc::EpisodeTree t(0.9);
  const auto root = t.add_root(0, mc::MultiAction::single(A));
  EXPECT_ANY_THROW(t.add_edge(root, A, {}, root));
}

TEST(EpisodeTree, ValidateCatchesMissingEdges) {
  mc::EpisodeTree t(0.9);
  const auto root = t.add_root(0, mc::MultiAction({A, B}, false));
  t.add_edge(root, A, {}, std::nullopt);
  EXPECT_THROW(t.validate(), std::logic_error);
}
