#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "beesvrp/model.hpp"
#include "beesvrp/rng.hpp"

namespace beesvrp {

struct DestroyResult {
  Solution partial;
  std::vector<int> removed;
};

// Shaw relatedness: distance_weight / (1 + c_ab / mean edge cost), plus
// adjacency_bonus when a and b are consecutive in one route. Removal picks the
// candidate at rank floor(u^determinism * remaining).
struct RelatednessParams {
  double distance_weight = 1.0;
  double adjacency_bonus = 1.0;
  double determinism = 4.0;
};

// Removes `count` distinct customers uniformly at random. Throws
// std::invalid_argument unless 1 <= count <= routed customers.
DestroyResult destroy_random(const Solution& solution, std::size_t count, Rng& rng);

double relatedness(int a, int b, const Solution& solution, const RelatednessParams& params);

DestroyResult destroy_shaw(const Solution& solution, std::size_t count, Rng& rng,
                           const RelatednessParams& params = {});

// Fitness increase of putting `customer` before index `position` of `route`:
// alpha * c* plus the weighted growth of the overcapacity and overtime terms.
double insertion_cost(const Instance& instance, const Route& route, std::size_t position, int customer,
                      const FitnessWeights& weights);

// Number of candidate-list entries scanned by repair for a site of the given age.
std::size_t extent(std::size_t age, double rate, std::size_t list_length);

constexpr std::size_t full_extent = std::numeric_limits<std::size_t>::max();
// Minimum number of candidate-list entries repair scans regardless of extent.
constexpr std::size_t min_extent = 3;

struct InsertionOptions {
  std::size_t extent = full_extent;
  // Offer one empty route so an insertion may open a new vehicle.
  bool allow_new_route = true;
};

// Inserts `customers` in the given order, each at its cheapest admissible
// position (ties: lowest route index, then lowest position).
void insert_cheapest(Solution& solution, std::span<const int> customers, const FitnessWeights& weights,
                     const InsertionOptions& options);

// Reinserts the removed customers in uniformly random order; returns a
// complete solution with empty routes dropped.
Solution repair(Solution partial, std::vector<int> removed, std::size_t extent, Rng& rng,
                const FitnessWeights& weights);

enum class ImprovementPolicy { first_improvement, best_improvement };

// Osman's lambda-interchange between route pairs (chains of 0..lambda_max
// customers swapped, including one-sided relocations and moves into a fresh
// route). Returns the improved solution, or nullopt when no exchange lowers
// the fitness. The rng shuffles the scan order of route pairs.
std::optional<Solution> lambda_interchange(const Solution& solution, int lambda_max, Rng& rng,
                                           const FitnessWeights& weights, ImprovementPolicy policy);

}  // namespace beesvrp
