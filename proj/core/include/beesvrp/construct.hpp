#pragma once

#include <cstddef>
#include <vector>

#include "beesvrp/model.hpp"
#include "beesvrp/rng.hpp"

namespace beesvrp {

struct SavingsEntry {
  int i = 0;
  int j = 0;
  double saving = 0.0;

  friend bool operator==(const SavingsEntry&, const SavingsEntry&) = default;
};

// s_ij = c_i0 + c_j0 - c_ij for every customer pair i < j, sorted by
// descending saving, ties by (i, j) ascending.
std::vector<SavingsEntry> savings_list(const Instance& instance);

enum class SavingsMode { parallel, sequential };

struct SavingsOptions {
  SavingsMode mode = SavingsMode::parallel;
  // Also reject merges whose duration exceeds the limit. Off reproduces the
  // classic capacity-only algorithm.
  bool check_duration = true;
};

// Clarke-Wright savings. `merges`, when given, receives the savings entries in
// the order their merges were performed.
Solution clarke_wright(const Instance& instance, const SavingsOptions& options = {},
                       std::vector<SavingsEntry>* merges = nullptr);

// ceil(total demand / capacity), clamped to [1, n].
std::size_t capacity_route_bound(const Instance& instance);

// Seeds `route_count` routes with distinct random customers, then inserts the
// rest in random order at their cheapest position (full extent, no new
// routes). Throws std::invalid_argument unless 1 <= route_count <= n.
Solution random_seed_insertion(const Instance& instance, Rng& rng, std::size_t route_count,
                               const FitnessWeights& weights);

}  // namespace beesvrp
