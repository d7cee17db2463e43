#include <benchmark/benchmark.h>

#include <random>

#include "beesvrp/construct.hpp"
#include "beesvrp/neighborhood.hpp"
#include "beesvrp/registry.hpp"
#include "beesvrp/solver.hpp"

namespace {

using namespace beesvrp;

Instance uniform_instance(int n) {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<int> coord(0, 100);
  std::uniform_int_distribution<int> demand(1, 30);
  std::vector<Customer> customers;
  for (int i = 1; i <= n; ++i) customers.push_back({i, double(coord(gen)), double(coord(gen)), double(demand(gen)), 0});
  return Instance("bench" + std::to_string(n), {50, 50}, std::move(customers), 160, std::nullopt);
}

void BM_ClarkeWright(benchmark::State& state) {
  const auto inst = uniform_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clarke_wright(inst).total_cost());
}
BENCHMARK(BM_ClarkeWright)->Arg(50)->Arg(100)->Arg(200);

void BM_DestroyShaw(benchmark::State& state) {
  const auto inst = uniform_instance(static_cast<int>(state.range(0)));
  const auto s = clarke_wright(inst);
  Rng rng(1);
  const auto count = static_cast<std::size_t>(state.range(0)) * 2 / 5;
  for (auto _ : state) benchmark::DoNotOptimize(destroy_shaw(s, count, rng).removed.size());
}
BENCHMARK(BM_DestroyShaw)->Arg(50)->Arg(100)->Arg(200);

// Repair of 40% of the customers at a given extent.
void BM_Repair(benchmark::State& state) {
  const auto inst = uniform_instance(static_cast<int>(state.range(0)));
  const auto w = default_weights(inst);
  const auto s = clarke_wright(inst);
  const auto mu = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  const auto count = static_cast<std::size_t>(state.range(0)) * 2 / 5;
  for (auto _ : state) {
    auto d = destroy_random(s, count, rng);
    benchmark::DoNotOptimize(repair(std::move(d.partial), std::move(d.removed), mu, rng, w).total_cost());
  }
}
BENCHMARK(BM_Repair)->Args({100, 5})->Args({100, 50})->Args({100, 99})->Args({200, 199});

void BM_ExploreSite(benchmark::State& state) {
  const auto inst = uniform_instance(100);
  const auto w = default_weights(inst);
  auto config = profile_config(Profile::fast);
  config.initial_sites = 1;
  const Deadline deadline(1e9);
  for (auto _ : state) {
    state.PauseTiming();
    PositionRegistry registry;
    auto sites = seed_sites(inst, registry, config, w);
    state.ResumeTiming();
    benchmark::DoNotOptimize(explore_site(sites[0], registry, config, w, deadline).admitted);
  }
}
BENCHMARK(BM_ExploreSite);

}  // namespace

BENCHMARK_MAIN();
