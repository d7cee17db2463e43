#include "beesvrp/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beesvrp {

FitnessWeights WeightSpec::resolve(const Instance& instance) const {
  const auto defaults = default_weights(instance);
  return {alpha, beta.value_or(defaults.beta), gamma.value_or(defaults.gamma)};
}

void DestroyPolicy::validate() const {
  if (!(0.0 <= min_fraction && min_fraction <= mean_fraction && mean_fraction <= max_fraction &&
        max_fraction <= 1.0)) {
    throw std::invalid_argument("destroy fractions must satisfy 0 <= min <= mean <= max <= 1");
  }
  if (!(0.0 <= shaw_probability && shaw_probability <= 1.0)) {
    throw std::invalid_argument("shaw probability must be in [0, 1]");
  }
  if (relatedness.distance_weight < 0.0 || relatedness.adjacency_bonus < 0.0 || relatedness.determinism < 0.0) {
    throw std::invalid_argument("relatedness parameters must be non-negative");
  }
}

std::size_t DestroyPolicy::draw_count(std::size_t routed, Rng& rng) const {
  double fraction = 0.0;
  if (shape == Shape::uniform) {
    fraction = rng.uniform(min_fraction, max_fraction);
  } else {
    // Mode chosen so that the triangular mean (min + mode + max) / 3 equals mean_fraction.
    const double mode = std::clamp(3.0 * mean_fraction - min_fraction - max_fraction, min_fraction, max_fraction);
    fraction = rng.triangular(min_fraction, mode, max_fraction);
  }
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(routed)));
  return std::clamp<std::size_t>(count, 1, routed);
}

std::string_view to_string(DestroyPolicy::Shape shape) {
  return shape == DestroyPolicy::Shape::uniform ? "uniform" : "triangular";
}

Solution lns_move(const Solution& from, const DestroyPolicy& policy, std::size_t extent_entries, Rng& rng,
                  const FitnessWeights& weights) {
  const auto count = policy.draw_count(from.routed_count(), rng);
  auto destroyed = rng.uniform01() < policy.shaw_probability
                       ? destroy_shaw(from, count, rng, policy.relatedness)
                       : destroy_random(from, count, rng);
  return repair(std::move(destroyed.partial), std::move(destroyed.removed), extent_entries, rng, weights);
}

bool Incumbent::offer(const Solution& solution, double fitness_value) {
  if (!is_feasible(solution)) {
    if (!result_.best_solution && fitness_value < result_.best_infeasible_fitness) {
      result_.best_infeasible = solution;
      result_.best_infeasible_fitness = fitness_value;
    }
    return false;
  }
  const double cost = solution.total_cost();
  if (result_.best_solution && !(cost < result_.best_cost)) return false;
  result_.best_solution = solution;
  result_.best_cost = cost;
  result_.status = SolveStatus::feasible;
  result_.best_infeasible.reset();
  result_.best_infeasible_fitness = std::numeric_limits<double>::infinity();
  result_.trace.push_back({clock_->elapsed(), cost});
  return true;
}

SolveResult Incumbent::finish(std::uint64_t iterations) && {
  result_.iterations = iterations;
  result_.elapsed_seconds = clock_->elapsed();
  return std::move(result_);
}

}  // namespace beesvrp
