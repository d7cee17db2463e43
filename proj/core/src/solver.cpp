#include "beesvrp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "beesvrp/construct.hpp"
#include "beesvrp/neighborhood.hpp"

namespace beesvrp {

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (initial_sites < 1) fail("initial_sites must be at least 1");
  if (cull_period < 1) fail("cull_period must be at least 1");
  if (!(cull_fraction > 0.0 && cull_fraction <= 1.0)) fail("cull_fraction must be in (0, 1]");
  if (min_sites < 1) fail("min_sites must be at least 1");
  if (initial_sites < min_sites) fail("initial_sites must be at least min_sites");
  if (memory_size < 1) fail("memory_size must be at least 1");
  if (bees_per_position < 1) fail("bees_per_position must be at least 1");
  if (!(extent_rate > 0.0)) fail("extent_rate must be positive");
  if (!(max_extent_fraction > 0.0 && max_extent_fraction <= 1.0)) fail("max_extent_fraction must be in (0, 1]");
  if (!(time_limit >= 0.0) || !std::isfinite(time_limit)) fail("time_limit must be a non-negative number");
  if (threads < 1) fail("threads must be at least 1");
  if (seed_routes && *seed_routes < 1) fail("seed_routes must be at least 1");
  if (!(weights.alpha >= 0.0)) fail("alpha must be non-negative");
  if (weights.beta && !(*weights.beta >= 0.0)) fail("beta must be non-negative");
  if (weights.gamma && !(*weights.gamma >= 0.0)) fail("gamma must be non-negative");
  destroy.validate();
}

std::string_view to_string(Profile profile) { return profile == Profile::best ? "best" : "fast"; }

Profile parse_profile(std::string_view text) {
  if (text == "fast") return Profile::fast;
  if (text == "best") return Profile::best;
  throw std::invalid_argument("unknown profile '" + std::string(text) + "' (expected fast or best)");
}

SolverConfig profile_config(Profile profile) {
  SolverConfig config;
  config.max_extent_fraction = 0.5;
  if (profile == Profile::best) {
    config.initial_sites = 100;
    config.cull_period = 50;
    config.cull_fraction = 0.01;
    config.min_sites = 3;
    config.time_limit = 1800.0;
  }
  return config;
}

std::size_t site_extent(std::size_t age, std::size_t customers, const SolverConfig& config) {
  const std::size_t length = customers > 0 ? customers - 1 : 0;
  const auto cap = static_cast<std::size_t>(std::floor(config.max_extent_fraction * static_cast<double>(length)));
  return std::min(extent(age, config.extent_rate, length), cap);
}

ExploreOutcome explore_site(Site& site, PositionRegistry& registry, const SolverConfig& config,
                            const FitnessWeights& weights, const Deadline& deadline, const SolveHooks* hooks) {
  ExploreOutcome outcome;
  if (site.memory.empty()) return outcome;
  const auto customers = static_cast<std::size_t>(site.memory.front().solution.instance().customer_count());
  const auto mu = site_extent(site.age, customers, config);

  std::vector<Position> candidates;
  for (const auto& origin : site.memory) {
    for (std::size_t bee = 0; bee < config.bees_per_position && !deadline.expired(); ++bee) {
      for (int attempt = 0; attempt < 2; ++attempt) {
        auto moved = lns_move(origin.solution, config.destroy, mu, site.rng, weights);
        const double f = fitness(moved, weights);
        if (!registry.try_occupy(f)) {
          ++outcome.rejected;
          continue;
        }
        candidates.push_back({std::move(moved), f});
        if (hooks && hooks->on_admit) hooks->on_admit(site.id, candidates.back());
        break;
      }
    }
  }
  outcome.admitted = candidates.size();

  for (const auto& c : candidates) {
    if (!outcome.best_candidate || c.fitness < outcome.best_candidate->fitness) outcome.best_candidate = c;
    if (is_feasible(c.solution) &&
        (!outcome.best_feasible || c.solution.total_cost() < outcome.best_feasible->solution.total_cost())) {
      outcome.best_feasible = c;
    }
  }

  // Old positions first so that ties keep them.
  auto& memory = site.memory;
  memory.insert(memory.end(), std::make_move_iterator(candidates.begin()), std::make_move_iterator(candidates.end()));
  std::stable_sort(memory.begin(), memory.end(),
                   [](const Position& a, const Position& b) { return a.fitness < b.fitness; });
  if (memory.size() > config.memory_size) memory.erase(memory.begin() + static_cast<std::ptrdiff_t>(config.memory_size), memory.end());

  if (memory.front().fitness < site.best_ever.fitness) {
    site.best_ever = memory.front();
    site.age = 0;
    outcome.improved = true;
  } else {
    ++site.age;
  }
  return outcome;
}

std::size_t cull_count(std::size_t site_count, const SolverConfig& config) {
  if (site_count <= config.min_sites) return 0;
  const auto wanted = static_cast<std::size_t>(std::ceil(config.cull_fraction * static_cast<double>(site_count) - 1e-12));
  return std::min(wanted, site_count - config.min_sites);
}

std::vector<std::size_t> cull_sites(std::vector<Site>& sites, const SolverConfig& config, std::uint64_t iteration) {
  if (iteration == 0) throw std::invalid_argument("cull iteration must be at least 1");
  std::vector<std::size_t> removed;
  if (iteration % config.cull_period != 0) return removed;
  const auto count = cull_count(sites.size(), config);
  if (count == 0) return removed;

  std::vector<std::size_t> order(sites.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Worst first: highest best-ever fitness, then highest id.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sites[a].best_ever.fitness != sites[b].best_ever.fitness) {
      return sites[a].best_ever.fitness > sites[b].best_ever.fitness;
    }
    return sites[a].id > sites[b].id;
  });
  std::vector<bool> drop(sites.size(), false);
  for (std::size_t k = 0; k < count; ++k) {
    drop[order[k]] = true;
    removed.push_back(sites[order[k]].id);
  }
  std::vector<Site> kept;
  kept.reserve(sites.size() - count);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(sites[i]));
  }
  sites = std::move(kept);
  return removed;
}

std::vector<Site> seed_sites(const Instance& instance, PositionRegistry& registry, const SolverConfig& config,
                             const FitnessWeights& weights) {
  const auto n = static_cast<std::size_t>(instance.customer_count());
  const auto routes = std::min(config.seed_routes.value_or(capacity_route_bound(instance)), n);
  std::vector<Site> sites;
  sites.reserve(config.initial_sites);
  for (std::size_t s = 0; s < config.initial_sites; ++s) {
    Rng rng(derive_seed(config.seed, s));
    auto solution = random_seed_insertion(instance, rng, routes, weights);
    const double f = fitness(solution, weights);
    registry.try_occupy(f);
    Position seed{std::move(solution), f};
    sites.push_back(Site{s, {seed}, 0, seed, rng});
  }
  return sites;
}

SolveResult solve(const Instance& instance, const SolverConfig& config, const SolveHooks& hooks) {
  config.validate();
  const Deadline deadline(config.time_limit);
  const auto weights = config.weights.resolve(instance);
  PositionRegistry registry;
  Incumbent incumbent(deadline);

  auto sites = seed_sites(instance, registry, config, weights);
  for (const auto& site : sites) incumbent.offer(site.best_ever.solution, site.best_ever.fitness);

  // on_admit may be called from worker threads; serialise it.
  std::mutex hook_mutex;
  SolveHooks worker_hooks;
  if (hooks.on_admit) {
    worker_hooks.on_admit = [&](std::size_t site, const Position& p) {
      std::lock_guard lock(hook_mutex);
      hooks.on_admit(site, p);
    };
  }

  std::uint64_t iteration = 0;
  std::vector<ExploreOutcome> outcomes;
  while (!deadline.expired() && (config.max_iterations == 0 || iteration < config.max_iterations)) {
    ++iteration;
    outcomes.assign(sites.size(), {});
    const auto workers = std::min(config.threads, sites.size());
    if (workers <= 1) {
      for (std::size_t i = 0; i < sites.size(); ++i) {
        outcomes[i] = explore_site(sites[i], registry, config, weights, deadline, &worker_hooks);
      }
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < sites.size(); i += workers) {
            outcomes[i] = explore_site(sites[i], registry, config, weights, deadline, &worker_hooks);
          }
        });
      }
    }
    for (const auto& outcome : outcomes) {
      if (outcome.best_feasible) {
        incumbent.offer(outcome.best_feasible->solution, outcome.best_feasible->fitness);
      } else if (outcome.best_candidate) {
        incumbent.offer(outcome.best_candidate->solution, outcome.best_candidate->fitness);
      }
    }
    cull_sites(sites, config, iteration);
    if (hooks.on_iteration) hooks.on_iteration(iteration, sites);
  }
  return std::move(incumbent).finish(iteration);
}

}  // namespace beesvrp
