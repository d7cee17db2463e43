#include "beesvrp/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace beesvrp {

namespace {

std::vector<int> routed_customers(const Solution& solution) {
  std::vector<int> customers;
  customers.reserve(solution.routed_count());
  for (int c = 1; c <= solution.instance().customer_count(); ++c) {
    if (solution.contains(c)) customers.push_back(c);
  }
  return customers;
}

void check_count(const Solution& solution, std::size_t count) {
  if (count < 1 || count > solution.routed_count()) {
    throw std::invalid_argument("destroy count " + std::to_string(count) + " outside [1, " +
                                std::to_string(solution.routed_count()) + "]");
  }
}

DestroyResult remove_all(const Solution& solution, std::vector<int> removed) {
  DestroyResult result{solution, std::move(removed)};
  for (int c : result.removed) result.partial.remove(c);
  return result;
}

}  // namespace

DestroyResult destroy_random(const Solution& solution, std::size_t count, Rng& rng) {
  check_count(solution, count);
  auto pool = routed_customers(solution);
  // Partial Fisher-Yates: the first `count` slots end up a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return remove_all(solution, std::move(pool));
}

double relatedness(int a, int b, const Solution& solution, const RelatednessParams& params) {
  const auto& instance = solution.instance();
  double score = params.distance_weight / (1.0 + instance.cost(a, b) / instance.mean_edge_cost());
  if (solution.contains(a) && solution.route_of(a) == solution.route_of(b) &&
      std::abs(solution.position_of(a) - solution.position_of(b)) == 1) {
    score += params.adjacency_bonus;
  }
  return score;
}

DestroyResult destroy_shaw(const Solution& solution, std::size_t count, Rng& rng,
                           const RelatednessParams& params) {
  check_count(solution, count);
  auto remaining = routed_customers(solution);
  std::vector<int> removed;
  removed.reserve(count);

  const auto seed = rng.index(remaining.size());
  removed.push_back(remaining[seed]);
  remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(seed));

  std::vector<std::pair<double, int>> ranked;
  while (removed.size() < count) {
    const int anchor = removed[rng.index(removed.size())];
    ranked.clear();
    for (int c : remaining) ranked.emplace_back(relatedness(anchor, c, solution, params), c);
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    const double draw = std::pow(rng.uniform01(), params.determinism);
    auto rank = static_cast<std::size_t>(std::floor(draw * static_cast<double>(ranked.size())));
    rank = std::min(rank, ranked.size() - 1);
    const int chosen = ranked[rank].second;
    removed.push_back(chosen);
    remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
  }
  return remove_all(solution, std::move(removed));
}

double insertion_cost(const Instance& instance, const Route& route, std::size_t position, int customer,
                      const FitnessWeights& weights) {
  const int prev = position == 0 ? 0 : route[position - 1];
  const int next = position == route.size() ? 0 : route[position];
  const double detour = instance.cost(prev, customer) + instance.cost(customer, next) - instance.cost(prev, next);

  const double load_before = overcapacity(instance, route.load());
  const double load_after = overcapacity(instance, route.load() + instance.demand(customer));
  double cost = weights.alpha * detour + weights.beta * (load_after - load_before);
  if (instance.max_duration()) {
    const double time_before = route.empty() ? 0.0 : overtime(instance, route.duration());
    const double time_after = overtime(instance, route.duration() + instance.service_time(customer) + detour);
    cost += weights.gamma * (time_after - time_before);
  }
  return cost;
}

std::size_t extent(std::size_t age, double rate, std::size_t list_length) {
  if (!(rate > 0.0)) throw std::invalid_argument("extent rate must be positive");
  const double fraction = std::min(static_cast<double>(age) / rate, 1.0);
  return static_cast<std::size_t>(std::floor(static_cast<double>(list_length) * fraction));
}

void insert_cheapest(Solution& solution, std::span<const int> customers, const FitnessWeights& weights,
                     const InsertionOptions& options) {
  const auto& instance = solution.instance();
  const auto list_length = static_cast<std::size_t>(instance.customer_count() - 1);
  const bool scan_all = options.extent >= list_length;
  const std::size_t scan = std::max(min_extent, options.extent);

  std::optional<std::size_t> spare;
  if (options.allow_new_route) {
    for (std::size_t r = 0; r < solution.route_count(); ++r) {
      if (solution.route(r).empty()) {
        spare = r;
        break;
      }
    }
  }

  for (int customer : customers) {
    if (options.allow_new_route && !spare) spare = solution.add_route();

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_route = 0;
    std::size_t best_position = 0;
    bool found = false;
    auto consider = [&](std::size_t r, std::size_t p) {
      const auto& route = solution.route(r);
      if (route.empty() && !(options.allow_new_route && spare == r)) return;
      const double cost = insertion_cost(instance, route, p, customer, weights);
      if (!found || cost < best ||
          (cost == best && std::tie(r, p) < std::tie(best_route, best_position))) {
        best = cost;
        best_route = r;
        best_position = p;
        found = true;
      }
    };

    if (scan_all) {
      for (std::size_t r = 0; r < solution.route_count(); ++r) {
        for (std::size_t p = 0; p <= solution.route(r).size(); ++p) consider(r, p);
      }
    } else {
      std::size_t scanned = 0;
      for (int neighbour : instance.neighbours(customer)) {
        if (scanned == scan) break;
        if (!solution.contains(neighbour)) continue;
        const auto r = static_cast<std::size_t>(solution.route_of(neighbour));
        const auto p = static_cast<std::size_t>(solution.position_of(neighbour));
        consider(r, p);
        consider(r, p + 1);
        ++scanned;
      }
      for (std::size_t r = 0; r < solution.route_count(); ++r) {
        consider(r, 0);
        consider(r, solution.route(r).size());
      }
    }

    if (!found) {
      // Only reachable when new routes are disallowed and nothing is routed yet.
      best_route = solution.add_route();
      best_position = 0;
    }
    solution.insert(best_route, best_position, customer);
    if (spare && *spare == best_route) spare.reset();
  }
}

Solution repair(Solution partial, std::vector<int> removed, std::size_t extent_entries, Rng& rng,
                const FitnessWeights& weights) {
  rng.shuffle(std::span<int>(removed));
  insert_cheapest(partial, removed, weights, {extent_entries, true});
  partial.remove_empty_routes();
  return partial;
}

namespace {

// Prefix sums over one route for O(1) chain evaluation.
struct RouteSums {
  std::vector<double> edge;  // cost of the path r[0] .. r[i-1]
  std::vector<double> demand;
  std::vector<double> service;

  RouteSums(const Instance& instance, const Route& route) {
    const auto n = route.size();
    edge.assign(n + 1, 0.0);
    demand.assign(n + 1, 0.0);
    service.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      edge[i + 1] = edge[i] + (i == 0 ? 0.0 : instance.cost(route[i - 1], route[i]));
      demand[i + 1] = demand[i] + instance.demand(route[i]);
      service[i + 1] = service[i] + instance.service_time(route[i]);
    }
  }

  // Internal cost of the chain [start, start + length).
  double chain_cost(std::size_t start, std::size_t length) const {
    return length == 0 ? 0.0 : edge[start + length] - edge[start + 1];
  }
  double chain_demand(std::size_t start, std::size_t length) const {
    return demand[start + length] - demand[start];
  }
  double chain_service(std::size_t start, std::size_t length) const {
    return service[start + length] - service[start];
  }
};

struct Move {
  std::size_t route_a = 0;
  std::size_t start_a = 0;
  std::size_t length_a = 0;
  std::size_t route_b = 0;
  std::size_t start_b = 0;
  std::size_t length_b = 0;
  double delta = 0.0;
};

// Cost of the route after replacing chain [start, start+length) of `host`
// with `length_in` customers from `guest` starting at `guest_start`.
double spliced_cost(const Instance& instance, const Route& host, const RouteSums& host_sums, std::size_t start,
                    std::size_t length, const Route& guest, const RouteSums& guest_sums,
                    std::size_t guest_start, std::size_t length_in) {
  const int prev = start == 0 ? 0 : host[start - 1];
  const int next = start + length == host.size() ? 0 : host[start + length];
  double cost = host.cost();
  if (length == 0) {
    cost -= instance.cost(prev, next);
  } else {
    cost -= instance.cost(prev, host[start]) + host_sums.chain_cost(start, length) +
            instance.cost(host[start + length - 1], next);
  }
  if (length_in == 0) {
    cost += instance.cost(prev, next);
  } else {
    cost += instance.cost(prev, guest[guest_start]) + guest_sums.chain_cost(guest_start, length_in) +
            instance.cost(guest[guest_start + length_in - 1], next);
  }
  return cost;
}

double evaluate(const Instance& instance, const FitnessWeights& w, double cost, double load, double service,
                bool empty) {
  double value = w.alpha * cost + w.beta * overcapacity(instance, load);
  if (!empty) value += w.gamma * overtime(instance, service + cost);
  return value;
}

std::vector<int> splice(const Route& host, std::size_t start, std::size_t length, const Route& guest,
                        std::size_t guest_start, std::size_t length_in) {
  std::vector<int> out;
  out.reserve(host.size() - length + length_in);
  const auto h = host.customers();
  const auto g = guest.customers();
  out.insert(out.end(), h.begin(), h.begin() + static_cast<std::ptrdiff_t>(start));
  out.insert(out.end(), g.begin() + static_cast<std::ptrdiff_t>(guest_start),
             g.begin() + static_cast<std::ptrdiff_t>(guest_start + length_in));
  out.insert(out.end(), h.begin() + static_cast<std::ptrdiff_t>(start + length), h.end());
  return out;
}

}  // namespace

std::optional<Solution> lambda_interchange(const Solution& solution, int lambda_max, Rng& rng,
                                           const FitnessWeights& weights, ImprovementPolicy policy) {
  if (lambda_max <= 0) return std::nullopt;
  const auto& instance = solution.instance();
  const auto lambda = static_cast<std::size_t>(lambda_max);
  constexpr double improvement_epsilon = 1e-9;

  Solution base = solution;
  base.remove_empty_routes();
  const auto spare = base.add_route();
  const auto route_count = base.route_count();

  std::vector<RouteSums> sums;
  std::vector<double> route_values;
  sums.reserve(route_count);
  for (std::size_t r = 0; r < route_count; ++r) {
    sums.emplace_back(instance, base.route(r));
    route_values.push_back(route_fitness(instance, base.route(r), weights));
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < spare; ++a) {
    for (std::size_t b = a + 1; b < route_count; ++b) pairs.emplace_back(a, b);
  }
  if (policy == ImprovementPolicy::first_improvement) rng.shuffle(std::span(pairs));

  std::optional<Move> best;
  const bool first = policy == ImprovementPolicy::first_improvement;
  for (const auto& [ra, rb] : pairs) {
    if (first && best) break;
    const auto& A = base.route(ra);
    const auto& B = base.route(rb);
    const double old_value = route_values[ra] + route_values[rb];

    for (std::size_t la = 0; la <= std::min(lambda, A.size()) && !(first && best); ++la) {
      for (std::size_t sa = 0; sa + la <= A.size() && !(first && best); ++sa) {
        for (std::size_t lb = 0; lb <= std::min(lambda, B.size()) && !(first && best); ++lb) {
          if (la == 0 && lb == 0) continue;
          for (std::size_t sb = 0; sb + lb <= B.size() && !(first && best); ++sb) {
            const double cost_a = spliced_cost(instance, A, sums[ra], sa, la, B, sums[rb], sb, lb);
            const double cost_b = spliced_cost(instance, B, sums[rb], sb, lb, A, sums[ra], sa, la);
            const double moved_demand = sums[rb].chain_demand(sb, lb) - sums[ra].chain_demand(sa, la);
            const double moved_service = sums[rb].chain_service(sb, lb) - sums[ra].chain_service(sa, la);
            const bool a_empty = A.size() - la + lb == 0;
            const bool b_empty = B.size() - lb + la == 0;
            const double new_value =
                evaluate(instance, weights, a_empty ? 0.0 : cost_a, A.load() + moved_demand,
                         A.service_time() + moved_service, a_empty) +
                evaluate(instance, weights, b_empty ? 0.0 : cost_b, B.load() - moved_demand,
                         B.service_time() - moved_service, b_empty);
            const double delta = new_value - old_value;
            if (delta < -improvement_epsilon && (!best || delta < best->delta)) {
              best = Move{ra, sa, la, rb, sb, lb, delta};
            }
          }
        }
      }
    }
  }

  if (!best) return std::nullopt;
  const auto& A = base.route(best->route_a);
  const auto& B = base.route(best->route_b);
  auto new_a = splice(A, best->start_a, best->length_a, B, best->start_b, best->length_b);
  auto new_b = splice(B, best->start_b, best->length_b, A, best->start_a, best->length_a);
  // Clear both routes first so the exchanged customers are never routed twice.
  base.replace_route(best->route_a, {});
  base.replace_route(best->route_b, std::move(new_b));
  base.replace_route(best->route_a, std::move(new_a));
  base.remove_empty_routes();
  return base;
}

}  // namespace beesvrp
