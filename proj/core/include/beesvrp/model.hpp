#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beesvrp/instance.hpp"

namespace beesvrp {

// Penalty weights of the fitness function: distance, overcapacity, overtime.
struct FitnessWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

// alpha = 1, beta = gamma = 10 * mean edge cost of the instance.
FitnessWeights default_weights(const Instance& instance);

// From-scratch evaluations over a customer sequence (depot implicit at both ends).
double route_cost(const Instance& instance, std::span<const int> customers);
double route_load(const Instance& instance, std::span<const int> customers);
double route_service_time(const Instance& instance, std::span<const int> customers);

double overcapacity(const Instance& instance, double load);
double overtime(const Instance& instance, double duration);

class Solution;

// Ordered customers of one vehicle with cached load, cost and service time.
// Only Solution mutates a route, and every mutation refreshes the caches.
class Route {
 public:
  std::span<const int> customers() const { return customers_; }
  std::size_t size() const { return customers_.size(); }
  bool empty() const { return customers_.empty(); }
  int operator[](std::size_t i) const { return customers_[i]; }
  int front() const { return customers_.front(); }
  int back() const { return customers_.back(); }

  double load() const { return load_; }
  double cost() const { return cost_; }
  double service_time() const { return service_; }
  double duration() const { return service_ + cost_; }

 private:
  friend class Solution;

  std::vector<int> customers_;
  double load_ = 0.0;
  double cost_ = 0.0;
  double service_ = 0.0;
};

double route_overcapacity(const Instance& instance, const Route& route);
double route_overtime(const Instance& instance, const Route& route);
double route_fitness(const Instance& instance, const Route& route, const FitnessWeights& weights);

// A set of routes over a subset of customers; each customer is in at most one
// route. Keeps a customer -> (route, position) index. The instance must
// outlive every solution built on it.
class Solution {
 public:
  explicit Solution(const Instance& instance);

  // Throws std::invalid_argument on unknown or repeated customers.
  static Solution from_routes(const Instance& instance, const std::vector<std::vector<int>>& routes);

  const Instance& instance() const { return *instance_; }
  std::span<const Route> routes() const { return routes_; }
  const Route& route(std::size_t index) const { return routes_[index]; }
  std::size_t route_count() const { return routes_.size(); }

  bool contains(int customer) const { return route_of_[static_cast<std::size_t>(customer)] >= 0; }
  int route_of(int customer) const { return route_of_[static_cast<std::size_t>(customer)]; }
  int position_of(int customer) const { return position_of_[static_cast<std::size_t>(customer)]; }
  std::size_t routed_count() const { return routed_count_; }
  bool complete() const { return routed_count_ == static_cast<std::size_t>(instance_->customer_count()); }

  std::size_t add_route();
  void insert(std::size_t route, std::size_t position, int customer);
  void remove(int customer);
  void replace_route(std::size_t route, std::vector<int> customers);
  void remove_empty_routes();

  double total_cost() const;
  std::vector<std::vector<int>> to_lists() const;

 private:
  void refresh(std::size_t route);

  const Instance* instance_;
  std::vector<Route> routes_;
  std::vector<int> route_of_;
  std::vector<int> position_of_;
  std::size_t routed_count_ = 0;
};

double fitness(const Solution& solution, const FitnessWeights& weights);

// Complete, within capacity and within the duration limit on every route.
bool is_feasible(const Solution& solution, double tolerance = 1e-9);

struct Violation {
  enum class Kind { missing_customer, duplicate_customer, unknown_customer, overcapacity, overtime };

  Kind kind;
  int customer = -1;  // missing, duplicate and unknown customers
  int route = -1;     // overcapacity and overtime
  double amount = 0.0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind kind);

// One record per breach of the routing constraints; empty iff the routes form a
// complete, feasible solution.
std::vector<Violation> validate(const Instance& instance, const std::vector<std::vector<int>>& routes,
                                double tolerance = 1e-9);
std::vector<Violation> validate(const Solution& solution, double tolerance = 1e-9);

// One line per non-empty route (space separated ids) then `# cost <value>`.
std::string format_solution(const Solution& solution);
// Reads the format above; the cost trailer is optional and not checked.
std::vector<std::vector<int>> parse_solution(std::string_view text);

}  // namespace beesvrp
