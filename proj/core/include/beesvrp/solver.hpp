#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "beesvrp/instance.hpp"
#include "beesvrp/model.hpp"
#include "beesvrp/registry.hpp"
#include "beesvrp/rng.hpp"
#include "beesvrp/search.hpp"

namespace beesvrp {

struct SolverConfig {
  std::size_t initial_sites = 25;
  // Cull every cull_period iterations.
  std::size_t cull_period = 1;
  double cull_fraction = 0.01;
  std::size_t min_sites = 1;
  // Positions kept in each site's memory.
  std::size_t memory_size = 5;
  // Bees recruited per memory position and iteration.
  std::size_t bees_per_position = 2;
  DestroyPolicy destroy;
  // Age at which a site's repair reaches the full candidate list.
  double extent_rate = 50.0;
  // Hard cap on the extent as a fraction of the candidate list length.
  double max_extent_fraction = 1.0;
  WeightSpec weights;
  double time_limit = 60.0;
  // 0 means no iteration limit.
  std::uint64_t max_iterations = 0;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  // Routes of each seed solution; defaults to ceil(total demand / capacity).
  std::optional<std::size_t> seed_routes;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

enum class Profile { fast, best };

std::string_view to_string(Profile profile);
Profile parse_profile(std::string_view text);
SolverConfig profile_config(Profile profile);

struct Position {
  Solution solution;
  double fitness = 0.0;
};

// A flower patch: a memory of its best positions, an age, and its own stream.
struct Site {
  std::size_t id = 0;
  std::vector<Position> memory;  // ascending fitness
  std::size_t age = 0;
  Position best_ever;
  Rng rng;
};

struct ExploreOutcome {
  std::size_t admitted = 0;
  std::size_t rejected = 0;
  bool improved = false;
  // Best feasible admitted candidate, if any.
  std::optional<Position> best_feasible;
  // Lowest-fitness admitted candidate, if any.
  std::optional<Position> best_candidate;
};

// Observers for tests and tooling; all optional.
struct SolveHooks {
  std::function<void(std::uint64_t iteration, std::span<const Site> sites)> on_iteration;
  std::function<void(std::size_t site, const Position& candidate)> on_admit;
};

// Extent used by a site of the given age on an instance with n customers.
std::size_t site_extent(std::size_t age, std::size_t customers, const SolverConfig& config);

// One iteration of recruited bees on a site. Candidates whose position is
// already occupied are retried once, then discarded. Stops early when the
// deadline expires.
ExploreOutcome explore_site(Site& site, PositionRegistry& registry, const SolverConfig& config,
                            const FitnessWeights& weights, const Deadline& deadline,
                            const SolveHooks* hooks = nullptr);

// Number of sites removed by a cull of `site_count` sites.
std::size_t cull_count(std::size_t site_count, const SolverConfig& config);

// On iterations divisible by cull_period, drops the worst sites by best-ever
// fitness (ties: higher id first), never below min_sites. Returns the ids
// removed. Throws std::invalid_argument when iteration is 0.
std::vector<std::size_t> cull_sites(std::vector<Site>& sites, const SolverConfig& config, std::uint64_t iteration);

std::vector<Site> seed_sites(const Instance& instance, PositionRegistry& registry, const SolverConfig& config,
                             const FitnessWeights& weights);

SolveResult solve(const Instance& instance, const SolverConfig& config, const SolveHooks& hooks = {});

}  // namespace beesvrp
