#include "beesvrp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beesvrp/construct.hpp"
#include "beesvrp/neighborhood.hpp"

namespace beesvrp {

namespace {

void check_common(double time_limit, const WeightSpec& weights, const std::optional<std::size_t>& seed_routes) {
  if (!(time_limit >= 0.0) || !std::isfinite(time_limit)) {
    throw std::invalid_argument("time_limit must be a non-negative number");
  }
  if (!(weights.alpha >= 0.0) || (weights.beta && !(*weights.beta >= 0.0)) ||
      (weights.gamma && !(*weights.gamma >= 0.0))) {
    throw std::invalid_argument("fitness weights must be non-negative");
  }
  if (seed_routes && *seed_routes < 1) throw std::invalid_argument("seed_routes must be at least 1");
}

std::size_t seed_route_count(const Instance& instance, const std::optional<std::size_t>& seed_routes) {
  return std::min(seed_routes.value_or(capacity_route_bound(instance)),
                  static_cast<std::size_t>(instance.customer_count()));
}

struct Bee {
  Solution solution;
  double fitness = 0.0;
};

}  // namespace

void StandardBeesConfig::validate() const {
  if (bees < 1) throw std::invalid_argument("bees must be at least 1");
  if (elite_sites + other_sites > bees) throw std::invalid_argument("elite_sites + other_sites exceeds bees");
  if (lambda_max < 1 || lambda_max > 2) throw std::invalid_argument("lambda_max must be 1 or 2");
  check_common(time_limit, weights, seed_routes);
}

void LnsConfig::validate() const {
  destroy.validate();
  check_common(time_limit, weights, seed_routes);
}

SolveResult standard_bees_solve(const Instance& instance, const StandardBeesConfig& config) {
  config.validate();
  const Deadline deadline(config.time_limit);
  const auto weights = config.weights.resolve(instance);
  const auto routes = seed_route_count(instance, config.seed_routes);
  Rng rng(config.seed);
  Incumbent incumbent(deadline);

  auto scout = [&] {
    auto solution = random_seed_insertion(instance, rng, routes, weights);
    const double f = fitness(solution, weights);
    incumbent.offer(solution, f);
    return Bee{std::move(solution), f};
  };

  std::vector<Bee> bees;
  bees.reserve(config.bees);
  for (std::size_t b = 0; b < config.bees; ++b) bees.push_back(scout());

  std::uint64_t iteration = 0;
  while (!deadline.expired() && (config.max_iterations == 0 || iteration < config.max_iterations)) {
    ++iteration;
    std::stable_sort(bees.begin(), bees.end(), [](const Bee& a, const Bee& b) { return a.fitness < b.fitness; });
    const auto selected = config.elite_sites + config.other_sites;
    for (std::size_t b = 0; b < selected && !deadline.expired(); ++b) {
      const auto recruits = b < config.elite_sites ? config.elite_recruits : config.other_recruits;
      std::optional<Bee> best;
      for (std::size_t r = 0; r < recruits && !deadline.expired(); ++r) {
        auto moved = lambda_interchange(bees[b].solution, config.lambda_max, rng, weights,
                                        ImprovementPolicy::first_improvement);
        if (!moved) continue;
        const double f = fitness(*moved, weights);
        if (!best || f < best->fitness) best = Bee{std::move(*moved), f};
      }
      if (best && best->fitness < bees[b].fitness) {
        incumbent.offer(best->solution, best->fitness);
        bees[b] = std::move(*best);
      }
    }
    for (std::size_t b = selected; b < bees.size() && !deadline.expired(); ++b) bees[b] = scout();
  }
  return std::move(incumbent).finish(iteration);
}

SolveResult lns_hill_climb_solve(const Instance& instance, const LnsConfig& config) {
  config.validate();
  const Deadline deadline(config.time_limit);
  const auto weights = config.weights.resolve(instance);
  Rng rng(config.seed);
  Incumbent incumbent(deadline);

  auto current = random_seed_insertion(instance, rng, seed_route_count(instance, config.seed_routes), weights);
  double current_fitness = fitness(current, weights);
  incumbent.offer(current, current_fitness);

  std::uint64_t iteration = 0;
  while (!deadline.expired() && (config.max_iterations == 0 || iteration < config.max_iterations)) {
    ++iteration;
    auto candidate = lns_move(current, config.destroy, full_extent, rng, weights);
    const double f = fitness(candidate, weights);
    if (f < current_fitness) {
      current = std::move(candidate);
      current_fitness = f;
      incumbent.offer(current, current_fitness);
    }
  }
  return std::move(incumbent).finish(iteration);
}

}  // namespace beesvrp
