#include "beesvrp/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beesvrp/neighborhood.hpp"

namespace beesvrp {

std::vector<SavingsEntry> savings_list(const Instance& instance) {
  const int n = instance.customer_count();
  std::vector<SavingsEntry> list;
  list.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      list.push_back({i, j, instance.cost(i, 0) + instance.cost(j, 0) - instance.cost(i, j)});
    }
  }
  std::sort(list.begin(), list.end(), [](const SavingsEntry& a, const SavingsEntry& b) {
    if (a.saving != b.saving) return a.saving > b.saving;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return list;
}

namespace {

struct Partial {
  std::vector<int> customers;
  double load = 0.0;
  double service = 0.0;
  double cost = 0.0;
  bool alive = true;
  bool closed = false;
};

class SavingsBuilder {
 public:
  SavingsBuilder(const Instance& instance, const SavingsOptions& options)
      : instance_(instance), options_(options), owner_(static_cast<std::size_t>(instance.customer_count()) + 1) {
    for (int c = 1; c <= instance.customer_count(); ++c) {
      owner_[static_cast<std::size_t>(c)] = routes_.size();
      routes_.push_back({{c}, instance.demand(c), instance.service_time(c), 2.0 * instance.cost(0, c)});
    }
  }

  std::size_t owner(int customer) const { return owner_[static_cast<std::size_t>(customer)]; }
  Partial& route(std::size_t r) { return routes_[r]; }

  bool feasible(const SavingsEntry& e) const {
    const auto ri = owner(e.i);
    const auto rj = owner(e.j);
    if (ri == rj) return false;
    const auto& a = routes_[ri];
    const auto& b = routes_[rj];
    if (a.closed || b.closed) return false;
    const bool i_end = a.customers.front() == e.i || a.customers.back() == e.i;
    const bool j_end = b.customers.front() == e.j || b.customers.back() == e.j;
    if (!i_end || !j_end) return false;
    if (a.load + b.load > instance_.capacity()) return false;
    if (options_.check_duration && instance_.max_duration()) {
      const double duration = a.cost + b.cost - e.saving + a.service + b.service;
      if (duration > *instance_.max_duration()) return false;
    }
    return true;
  }

  // Joins the routes of i and j as <..., i, j, ...>; returns the merged route.
  std::size_t merge(const SavingsEntry& e) {
    const auto ri = owner(e.i);
    const auto rj = owner(e.j);
    auto& a = routes_[ri];
    auto& b = routes_[rj];
    if (a.customers.back() != e.i) std::reverse(a.customers.begin(), a.customers.end());
    if (b.customers.front() != e.j) std::reverse(b.customers.begin(), b.customers.end());
    a.customers.insert(a.customers.end(), b.customers.begin(), b.customers.end());
    a.load += b.load;
    a.service += b.service;
    a.cost = a.cost + b.cost - e.saving;
    for (int c : b.customers) owner_[static_cast<std::size_t>(c)] = ri;
    b.customers.clear();
    b.alive = false;
    return ri;
  }

  Solution finish() const {
    std::vector<std::vector<int>> lists;
    for (const auto& r : routes_) {
      if (r.alive) lists.push_back(r.customers);
    }
    return Solution::from_routes(instance_, lists);
  }

 private:
  const Instance& instance_;
  SavingsOptions options_;
  std::vector<Partial> routes_;
  std::vector<std::size_t> owner_;
};

}  // namespace

Solution clarke_wright(const Instance& instance, const SavingsOptions& options, std::vector<SavingsEntry>* merges) {
  const auto list = savings_list(instance);
  SavingsBuilder builder(instance, options);
  auto record = [&](const SavingsEntry& e) {
    if (merges) merges->push_back(e);
  };

  if (options.mode == SavingsMode::parallel) {
    for (const auto& e : list) {
      if (builder.feasible(e)) {
        builder.merge(e);
        record(e);
      }
    }
    return builder.finish();
  }

  // Sequential: grow one route until no listed merge extends it, close it,
  // then start the next route from the best remaining feasible merge.
  std::optional<std::size_t> current;
  while (true) {
    bool merged = false;
    for (const auto& e : list) {
      if (!builder.feasible(e)) continue;
      if (current && builder.owner(e.i) != *current && builder.owner(e.j) != *current) continue;
      current = builder.merge(e);
      record(e);
      merged = true;
    }
    if (merged) continue;
    if (!current) break;
    builder.route(*current).closed = true;
    current.reset();
  }
  return builder.finish();
}

std::size_t capacity_route_bound(const Instance& instance) {
  const auto bound = static_cast<std::size_t>(std::ceil(instance.total_demand() / instance.capacity() - 1e-9));
  return std::clamp<std::size_t>(bound, 1, static_cast<std::size_t>(instance.customer_count()));
}

Solution random_seed_insertion(const Instance& instance, Rng& rng, std::size_t route_count,
                               const FitnessWeights& weights) {
  const auto n = static_cast<std::size_t>(instance.customer_count());
  if (route_count < 1 || route_count > n) {
    throw std::invalid_argument("route count " + std::to_string(route_count) + " outside [1, " +
                                std::to_string(n) + "]");
  }
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i) + 1;
  rng.shuffle(std::span<int>(order));

  Solution solution(instance);
  for (std::size_t r = 0; r < route_count; ++r) {
    solution.insert(solution.add_route(), 0, order[r]);
  }
  insert_cheapest(solution, std::span<const int>(order).subspan(route_count), weights,
                  {full_extent, false});
  return solution;
}

}  // namespace beesvrp
