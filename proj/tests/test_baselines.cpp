#include <gtest/gtest.h>

#include "beesvrp/baselines.hpp"
#include "beesvrp/construct.hpp"
#include "beesvrp/model.hpp"
#include "oracle.hpp"

namespace beesvrp {
namespace {

void expect_monotone_trace(const SolveResult& r) {
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LT(r.trace[k].cost, r.trace[k - 1].cost);
  if (r.feasible()) {
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.back().cost, r.best_cost);
    EXPECT_TRUE(validate(*r.best_solution).empty());
  }
}

TEST(StandardBees, DefaultShape) {
  const StandardBeesConfig c;
  EXPECT_EQ(c.bees, 25u);
  EXPECT_EQ(c.elite_sites, 6u);
  EXPECT_EQ(c.elite_recruits, 3u);
  EXPECT_EQ(c.other_sites, 6u);
  EXPECT_EQ(c.other_recruits, 2u);
  EXPECT_EQ(c.bees - c.elite_sites - c.other_sites, 13u);
  EXPECT_EQ(c.lambda_max, 2);
}

TEST(StandardBees, ConfigValidation) {
  StandardBeesConfig c;
  c.elite_sites = 20;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.lambda_max = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.lambda_max = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(StandardBees, SingleCustomer) {
  const Instance inst("one", {0, 0}, {{1, 3, 4, 2, 0}}, 5, std::nullopt);
  StandardBeesConfig c;
  c.max_iterations = 1;
  const auto r = standard_bees_solve(inst, c);
  ASSERT_TRUE(r.feasible());
  EXPECT_DOUBLE_EQ(r.best_cost, 10.0);
}

TEST(StandardBees, ReachesOptimumOnMostSmallInstances) {
  const auto suite = testing::oracle_suite(20, 2024);
  int hits = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto bf = testing::brute_force_optimum(suite[i]);
    StandardBeesConfig c;
    c.seed = i;
    c.max_iterations = 200;
    c.time_limit = 10;
    const auto r = standard_bees_solve(suite[i], c);
    expect_monotone_trace(r);
    if (r.feasible() && std::abs(r.best_cost - bf.cost) <= 1e-6) ++hits;
  }
  EXPECT_GT(hits, 10);
}

TEST(Lns, ZeroBudgetReturnsStart) {
  const auto inst = testing::random_instance({7, testing::Tightness::loose, false}, 3);
  LnsConfig c;
  c.time_limit = 0;
  c.seed = 5;
  const auto r = lns_hill_climb_solve(inst, c);
  EXPECT_EQ(r.iterations, 0u);
  Rng rng(5);
  const auto start = random_seed_insertion(inst, rng, capacity_route_bound(inst), default_weights(inst));
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.best_solution->to_lists(), start.to_lists());
}

TEST(Lns, ReachesOptimumOnAllSmallInstances) {
  const auto suite = testing::oracle_suite(20, 2024);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto bf = testing::brute_force_optimum(suite[i]);
    LnsConfig c;
    c.seed = i;
    c.max_iterations = 3000;
    c.time_limit = 10;
    const auto r = lns_hill_climb_solve(suite[i], c);
    expect_monotone_trace(r);
    ASSERT_TRUE(r.feasible()) << suite[i].name();
    EXPECT_NEAR(r.best_cost, bf.cost, 1e-6) << suite[i].name();
  }
}

TEST(Lns, Deterministic) {
  const auto inst = testing::random_instance({30, testing::Tightness::medium, true}, 8);
  LnsConfig c;
  c.max_iterations = 500;
  const auto a = lns_hill_climb_solve(inst, c);
  const auto b = lns_hill_climb_solve(inst, c);
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

}  // namespace
}  // namespace beesvrp
