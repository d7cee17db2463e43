#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "beesvrp/instance.hpp"
#include "beesvrp/search.hpp"

namespace beesvrp {

// Basic Bees Algorithm with a lambda-interchange local search for recruits.
struct StandardBeesConfig {
  std::size_t bees = 25;
  std::size_t elite_sites = 6;
  std::size_t elite_recruits = 3;
  std::size_t other_sites = 6;
  std::size_t other_recruits = 2;
  int lambda_max = 2;
  WeightSpec weights;
  double time_limit = 60.0;
  std::uint64_t max_iterations = 0;  // 0 means no limit
  std::uint64_t seed = 1;
  std::optional<std::size_t> seed_routes;

  void validate() const;
};

SolveResult standard_bees_solve(const Instance& instance, const StandardBeesConfig& config);

// Destroy/repair hill climber: accepts only strictly better fitness.
struct LnsConfig {
  DestroyPolicy destroy;
  WeightSpec weights;
  double time_limit = 60.0;
  std::uint64_t max_iterations = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> seed_routes;

  void validate() const;
};

SolveResult lns_hill_climb_solve(const Instance& instance, const LnsConfig& config);

}  // namespace beesvrp
