#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "beesvrp/construct.hpp"
#include "beesvrp/model.hpp"
#include "beesvrp/solver.hpp"
#include "oracle.hpp"

namespace beesvrp {
namespace {

SolverConfig quick(std::uint64_t seed, std::uint64_t iterations) {
  auto c = profile_config(Profile::fast);
  c.seed = seed;
  c.max_iterations = iterations;
  c.time_limit = 30.0;
  return c;
}

void expect_monotone_trace(const SolveResult& r) {
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_LT(r.trace[k].cost, r.trace[k - 1].cost);
    EXPECT_GE(r.trace[k].seconds, r.trace[k - 1].seconds);
  }
  EXPECT_EQ(r.trace.back().cost, r.best_cost);
}

Site make_site(const Instance& inst, PositionRegistry& registry, std::uint64_t seed) {
  SolverConfig c;
  c.initial_sites = 1;
  c.seed = seed;
  auto sites = seed_sites(inst, registry, c, default_weights(inst));
  return std::move(sites.front());
}

TEST(Profiles, Values) {
  const auto fast = profile_config(Profile::fast);
  EXPECT_EQ(fast.initial_sites, 25u);
  EXPECT_EQ(fast.cull_period, 1u);
  EXPECT_DOUBLE_EQ(fast.cull_fraction, 0.01);
  EXPECT_EQ(fast.min_sites, 1u);
  EXPECT_EQ(fast.memory_size, 5u);
  EXPECT_EQ(fast.bees_per_position, 2u);
  EXPECT_DOUBLE_EQ(fast.time_limit, 60.0);
  EXPECT_DOUBLE_EQ(fast.max_extent_fraction, 0.5);
  EXPECT_DOUBLE_EQ(fast.destroy.min_fraction, 0.0);
  EXPECT_DOUBLE_EQ(fast.destroy.mean_fraction, 0.4);
  EXPECT_DOUBLE_EQ(fast.destroy.max_fraction, 0.8);
  const auto best = profile_config(Profile::best);
  EXPECT_EQ(best.initial_sites, 100u);
  EXPECT_EQ(best.cull_period, 50u);
  EXPECT_EQ(best.min_sites, 3u);
  EXPECT_DOUBLE_EQ(best.time_limit, 1800.0);
  EXPECT_DOUBLE_EQ(SolverConfig{}.max_extent_fraction, 1.0);
  EXPECT_EQ(parse_profile("best"), Profile::best);
  EXPECT_THROW(parse_profile("slow"), std::invalid_argument);
}

TEST(SolverConfig, ValidationRejectsBadValues) {
  auto bad = [](auto mutate) {
    SolverConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), std::invalid_argument);
  };
  bad([](SolverConfig& c) { c.initial_sites = 0; });
  bad([](SolverConfig& c) { c.min_sites = 0; });
  bad([](SolverConfig& c) { c.initial_sites = 2; c.min_sites = 3; });
  bad([](SolverConfig& c) { c.cull_period = 0; });
  bad([](SolverConfig& c) { c.cull_fraction = 0.0; });
  bad([](SolverConfig& c) { c.cull_fraction = 1.5; });
  bad([](SolverConfig& c) { c.memory_size = 0; });
  bad([](SolverConfig& c) { c.bees_per_position = 0; });
  bad([](SolverConfig& c) { c.destroy.min_fraction = 0.5; c.destroy.mean_fraction = 0.4; });
  bad([](SolverConfig& c) { c.destroy.max_fraction = 1.2; });
  bad([](SolverConfig& c) { c.extent_rate = 0.0; });
  bad([](SolverConfig& c) { c.time_limit = -1.0; });
  EXPECT_NO_THROW(SolverConfig{}.validate());
}

TEST(Solve, SingleCustomer) {
  const Instance inst("one", {0, 0}, {{1, 3, 4, 2, 0}}, 5, std::nullopt);
  const auto r = solve(inst, quick(1, 1));
  ASSERT_TRUE(r.feasible());
  EXPECT_DOUBLE_EQ(r.best_cost, 10.0);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_TRUE(validate(*r.best_solution).empty());
}

TEST(Solve, FiveCustomersMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = testing::random_instance({5, static_cast<testing::Tightness>(seed % 3), seed % 2 == 1}, seed);
    const auto bf = testing::brute_force_optimum(inst);
    ASSERT_TRUE(bf.feasible);
    auto c = profile_config(Profile::fast);
    c.time_limit = 10.0;
    c.max_iterations = 300;
    c.seed = seed;
    const auto r = solve(inst, c);
    ASSERT_TRUE(r.feasible());
    EXPECT_NEAR(r.best_cost, bf.cost, 1e-6);
    EXPECT_TRUE(testing::brute_force_feasible(inst, r.best_solution->to_lists()));
    expect_monotone_trace(r);
  }
}

TEST(Solve, FixedSeedIsBitwiseDeterministic) {
  const auto inst = testing::random_instance({40, testing::Tightness::medium, true}, 77);
  const auto c = quick(123, 60);
  const auto a = solve(inst, c);
  const auto b = solve(inst, c);
  ASSERT_EQ(a.feasible(), b.feasible());
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_EQ(a.iterations, b.iterations);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) EXPECT_EQ(a.trace[k].cost, b.trace[k].cost);
  if (a.feasible()) EXPECT_EQ(a.best_solution->to_lists(), b.best_solution->to_lists());
}

TEST(Solve, RunInvariantsThroughHooks) {
  const auto inst = testing::random_instance({30, testing::Tightness::tight, false}, 5);
  auto c = quick(9, 120);
  c.initial_sites = 10;
  c.cull_period = 7;
  c.cull_fraction = 0.2;
  c.min_sites = 3;
  PositionRegistry keys;
  std::set<std::int64_t> admitted;
  std::size_t collisions = 0;
  std::size_t last_count = c.initial_sites;
  std::map<std::size_t, double> best_ever;
  SolveHooks hooks;
  hooks.on_admit = [&](std::size_t, const Position& p) {
    if (!admitted.insert(keys.key(p.fitness)).second) ++collisions;
  };
  hooks.on_iteration = [&](std::uint64_t iteration, std::span<const Site> sites) {
    EXPECT_LE(sites.size(), last_count);
    EXPECT_GE(sites.size(), c.min_sites);
    if (iteration % c.cull_period != 0) EXPECT_EQ(sites.size(), last_count);
    last_count = sites.size();
    for (const auto& s : sites) {
      EXPECT_LE(s.memory.size(), c.memory_size);
      EXPECT_TRUE(std::is_sorted(s.memory.begin(), s.memory.end(),
                                 [](const Position& a, const Position& b) { return a.fitness < b.fitness; }));
      for (const auto& m : s.memory) EXPECT_GE(m.fitness, s.best_ever.fitness);
      if (auto it = best_ever.find(s.id); it != best_ever.end()) EXPECT_LE(s.best_ever.fitness, it->second);
      best_ever[s.id] = s.best_ever.fitness;
    }
  };
  const auto r = solve(inst, c, hooks);
  EXPECT_EQ(collisions, 0u);
  EXPECT_GT(admitted.size(), 100u);
  EXPECT_EQ(last_count, c.min_sites);
  ASSERT_TRUE(r.feasible());
  expect_monotone_trace(r);
  EXPECT_TRUE(validate(*r.best_solution).empty());
}

TEST(Solve, ParallelModeKeepsInvariants) {
  const auto inst = testing::random_instance({30, testing::Tightness::medium, false}, 6);
  auto c = quick(3, 40);
  c.threads = 4;
  PositionRegistry keys;
  std::set<std::int64_t> admitted;
  std::size_t collisions = 0;
  SolveHooks hooks;
  hooks.on_admit = [&](std::size_t, const Position& p) {
    if (!admitted.insert(keys.key(p.fitness)).second) ++collisions;
  };
  const auto r = solve(inst, c, hooks);
  EXPECT_EQ(collisions, 0u);
  ASSERT_TRUE(r.feasible());
  expect_monotone_trace(r);
  EXPECT_TRUE(validate(*r.best_solution).empty());
}

TEST(Solve, ZeroTimeReturnsSeedIncumbent) {
  const auto inst = testing::random_instance({10, testing::Tightness::loose, false}, 1);
  auto c = quick(1, 0);
  c.time_limit = 0.0;
  const auto r = solve(inst, c);
  EXPECT_EQ(r.iterations, 0u);
  ASSERT_TRUE(r.feasible());
}

TEST(Solve, NoFeasibleOutcomeCarriesDiagnostics) {
  // Duration limit below any out-and-back trip: nothing can be feasible.
  const Instance inst("x", {0, 0}, {{1, 10, 0, 1, 0}, {2, 0, 10, 1, 0}}, 5, std::nullopt);
  const Instance limited("y", {0, 0}, {{1, 10, 0, 1, 0}, {2, 0, 10, 1, 5}}, 5, 24.0);
  const auto ok = solve(inst, quick(1, 5));
  EXPECT_TRUE(ok.feasible());
  const auto r = solve(limited, quick(1, 5));
  EXPECT_FALSE(r.feasible());
  EXPECT_EQ(r.status, SolveStatus::no_feasible);
  EXPECT_FALSE(r.best_solution);
  ASSERT_TRUE(r.best_infeasible);
  EXPECT_TRUE(r.best_infeasible->complete());
  EXPECT_TRUE(r.trace.empty());
}

TEST(SiteExtent, CappedByFraction) {
  SolverConfig c;
  c.extent_rate = 10;
  c.max_extent_fraction = 0.5;
  EXPECT_EQ(site_extent(0, 101, c), 0u);
  EXPECT_EQ(site_extent(5, 101, c), 50u);
  EXPECT_EQ(site_extent(100, 101, c), 50u);
  c.max_extent_fraction = 1.0;
  EXPECT_EQ(site_extent(100, 101, c), 100u);
  EXPECT_EQ(site_extent(100, 1, c), 0u);
}

TEST(ExploreSite, OccupiedCandidateRetriedThenDiscarded) {
  // One customer: every move recreates the same solution and fitness.
  const Instance inst("one", {0, 0}, {{1, 3, 4, 2, 0}}, 5, std::nullopt);
  PositionRegistry registry;
  auto site = make_site(inst, registry, 1);
  SolverConfig c;
  c.bees_per_position = 1;
  const Deadline deadline(10);
  const auto outcome = explore_site(site, registry, c, default_weights(inst), deadline);
  EXPECT_EQ(outcome.admitted, 0u);
  EXPECT_EQ(outcome.rejected, 2u);
  EXPECT_EQ(site.memory.size(), 1u);
  EXPECT_EQ(site.age, 1u);
}

TEST(ExploreSite, ImprovementResetsAge) {
  const auto inst = testing::random_instance({12, testing::Tightness::medium, false}, 4);
  PositionRegistry registry;
  auto site = make_site(inst, registry, 2);
  site.age = 7;
  const double before = site.best_ever.fitness;
  SolverConfig c;
  c.bees_per_position = 20;
  const Deadline deadline(10);
  bool improved = false;
  for (int round = 0; round < 5 && !improved; ++round) {
    const auto outcome = explore_site(site, registry, c, default_weights(inst), deadline);
    improved = outcome.improved;
  }
  ASSERT_TRUE(improved);
  EXPECT_EQ(site.age, 0u);
  EXPECT_LT(site.best_ever.fitness, before);
}

TEST(ExploreSite, NoAdmissionLeavesMemoryAndAges) {
  const auto inst = testing::random_instance({6, testing::Tightness::loose, false}, 1);
  PositionRegistry registry(1e9);  // one huge cell: everything collides
  auto site = make_site(inst, registry, 3);
  const auto before = site.memory.front().solution.to_lists();
  SolverConfig c;
  const Deadline deadline(10);
  const auto outcome = explore_site(site, registry, c, default_weights(inst), deadline);
  EXPECT_EQ(outcome.admitted, 0u);
  EXPECT_EQ(site.memory.size(), 1u);
  EXPECT_EQ(site.memory.front().solution.to_lists(), before);
  EXPECT_EQ(site.age, 1u);
}

std::vector<Site> fake_sites(const Instance& inst, const std::vector<double>& best) {
  PositionRegistry registry;
  SolverConfig c;
  c.initial_sites = best.size();
  auto sites = seed_sites(inst, registry, c, default_weights(inst));
  for (std::size_t i = 0; i < best.size(); ++i) sites[i].best_ever.fitness = best[i];
  return sites;
}

TEST(CullSites, OffTickIsNoOp) {
  const auto inst = testing::random_instance({5, testing::Tightness::loose, false}, 1);
  auto sites = fake_sites(inst, {1, 2, 3});
  SolverConfig c;
  c.cull_period = 50;
  EXPECT_TRUE(cull_sites(sites, c, 49).empty());
  EXPECT_EQ(sites.size(), 3u);
  EXPECT_THROW(cull_sites(sites, c, 0), std::invalid_argument);
}

TEST(CullSites, OnePercentOfHundred) {
  const auto inst = testing::random_instance({5, testing::Tightness::loose, false}, 1);
  std::vector<double> best(100);
  for (std::size_t i = 0; i < 100; ++i) best[i] = static_cast<double>(i % 17);
  auto sites = fake_sites(inst, best);
  auto c = profile_config(Profile::best);
  const auto removed = cull_sites(sites, c, 50);
  EXPECT_EQ(sites.size(), 99u);
  ASSERT_EQ(removed.size(), 1u);
  // Worst fitness 16 appears at ids 16, 33, 50, 67, 84: the highest id goes.
  EXPECT_EQ(removed[0], 84u);
}

TEST(CullSites, FloorAtMinSites) {
  const auto inst = testing::random_instance({5, testing::Tightness::loose, false}, 1);
  auto sites = fake_sites(inst, {5, 1, 4});
  SolverConfig c;
  c.min_sites = 3;
  c.cull_fraction = 1.0;
  EXPECT_TRUE(cull_sites(sites, c, 1).empty());
  c.min_sites = 2;
  const auto removed = cull_sites(sites, c, 1);
  ASSERT_EQ(removed, (std::vector<std::size_t>{0}));
  EXPECT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].id, 1u);
  EXPECT_EQ(sites[1].id, 2u);
}

}  // namespace
}  // namespace beesvrp
