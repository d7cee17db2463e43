#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "beesvrp/model.hpp"
#include "beesvrp/neighborhood.hpp"
#include "beesvrp/rng.hpp"

namespace beesvrp {

// Fitness weights with instance-relative defaults for the penalty terms.
struct WeightSpec {
  double alpha = 1.0;
  std::optional<double> beta;
  std::optional<double> gamma;

  FitnessWeights resolve(const Instance& instance) const;
};

// How much of a solution an LNS move destroys, and with which heuristic.
struct DestroyPolicy {
  enum class Shape { triangular, uniform };

  double min_fraction = 0.0;
  double mean_fraction = 0.4;
  double max_fraction = 0.8;
  Shape shape = Shape::triangular;
  // Probability of Shaw removal; random removal otherwise.
  double shaw_probability = 0.5;
  RelatednessParams relatedness;

  void validate() const;
  // Number of customers to remove, in [1, routed].
  std::size_t draw_count(std::size_t routed, Rng& rng) const;
};

std::string_view to_string(DestroyPolicy::Shape shape);

// One destroy + repair step from `from`.
Solution lns_move(const Solution& from, const DestroyPolicy& policy, std::size_t extent, Rng& rng,
                  const FitnessWeights& weights);

class Deadline {
 public:
  using clock = std::chrono::steady_clock;

  explicit Deadline(double seconds)
      : start_(clock::now()),
        end_(start_ + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(seconds))) {}

  bool expired() const { return clock::now() >= end_; }
  double elapsed() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

 private:
  clock::time_point start_;
  clock::time_point end_;
};

enum class SolveStatus { feasible, no_feasible };

struct TracePoint {
  double seconds = 0.0;
  double cost = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::no_feasible;
  std::optional<Solution> best_solution;  // feasible, when status == feasible
  double best_cost = std::numeric_limits<double>::infinity();
  // Lowest-fitness solution seen; kept for diagnostics when nothing was feasible.
  std::optional<Solution> best_infeasible;
  double best_infeasible_fitness = std::numeric_limits<double>::infinity();
  std::vector<TracePoint> trace;
  std::uint64_t iterations = 0;
  double elapsed_seconds = 0.0;

  bool feasible() const { return status == SolveStatus::feasible; }
};

// Tracks the best feasible solution and the incumbent trace of a run.
class Incumbent {
 public:
  explicit Incumbent(const Deadline& clock) : clock_(&clock) {}

  // Offers a candidate; returns true when it became the new feasible best.
  bool offer(const Solution& solution, double fitness_value);
  SolveResult finish(std::uint64_t iterations) &&;

 private:
  const Deadline* clock_;
  SolveResult result_;
};

}  // namespace beesvrp
