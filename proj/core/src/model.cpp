#include "beesvrp/model.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace beesvrp {

FitnessWeights default_weights(const Instance& instance) {
  const double scale = 10.0 * instance.mean_edge_cost();
  return {1.0, scale, scale};
}

double route_cost(const Instance& instance, std::span<const int> customers) {
  if (customers.empty()) return 0.0;
  double total = instance.cost(0, customers.front());
  for (std::size_t i = 1; i < customers.size(); ++i) total += instance.cost(customers[i - 1], customers[i]);
  return total + instance.cost(customers.back(), 0);
}

double route_load(const Instance& instance, std::span<const int> customers) {
  double total = 0.0;
  for (int c : customers) total += instance.demand(c);
  return total;
}

double route_service_time(const Instance& instance, std::span<const int> customers) {
  double total = 0.0;
  for (int c : customers) total += instance.service_time(c);
  return total;
}

double overcapacity(const Instance& instance, double load) {
  return std::max(load - instance.capacity(), 0.0);
}

double overtime(const Instance& instance, double duration) {
  if (!instance.max_duration()) return 0.0;
  return std::max(duration - *instance.max_duration(), 0.0);
}

double route_overcapacity(const Instance& instance, const Route& route) {
  return overcapacity(instance, route.load());
}

double route_overtime(const Instance& instance, const Route& route) {
  if (route.empty()) return 0.0;
  return overtime(instance, route.duration());
}

double route_fitness(const Instance& instance, const Route& route, const FitnessWeights& weights) {
  return weights.alpha * route.cost() + weights.beta * route_overcapacity(instance, route) +
         weights.gamma * route_overtime(instance, route);
}

Solution::Solution(const Instance& instance)
    : instance_(&instance),
      route_of_(static_cast<std::size_t>(instance.customer_count()) + 1, -1),
      position_of_(static_cast<std::size_t>(instance.customer_count()) + 1, -1) {}

Solution Solution::from_routes(const Instance& instance, const std::vector<std::vector<int>>& routes) {
  Solution solution(instance);
  for (const auto& customers : routes) {
    const auto r = solution.add_route();
    for (int c : customers) {
      if (c < 1 || c > instance.customer_count()) {
        throw std::invalid_argument("unknown customer " + std::to_string(c));
      }
      if (solution.contains(c)) throw std::invalid_argument("customer " + std::to_string(c) + " routed twice");
      solution.routes_[r].customers_.push_back(c);
      solution.route_of_[static_cast<std::size_t>(c)] = static_cast<int>(r);
      ++solution.routed_count_;
    }
    solution.refresh(r);
  }
  return solution;
}

std::size_t Solution::add_route() {
  routes_.emplace_back();
  return routes_.size() - 1;
}

void Solution::insert(std::size_t route, std::size_t position, int customer) {
  auto& seq = routes_[route].customers_;
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(position), customer);
  route_of_[static_cast<std::size_t>(customer)] = static_cast<int>(route);
  ++routed_count_;
  refresh(route);
}

void Solution::remove(int customer) {
  const int r = route_of(customer);
  if (r < 0) return;
  auto& seq = routes_[static_cast<std::size_t>(r)].customers_;
  seq.erase(seq.begin() + position_of(customer));
  route_of_[static_cast<std::size_t>(customer)] = -1;
  position_of_[static_cast<std::size_t>(customer)] = -1;
  --routed_count_;
  refresh(static_cast<std::size_t>(r));
}

void Solution::replace_route(std::size_t route, std::vector<int> customers) {
  for (int c : routes_[route].customers_) {
    route_of_[static_cast<std::size_t>(c)] = -1;
    position_of_[static_cast<std::size_t>(c)] = -1;
    --routed_count_;
  }
  for (int c : customers) {
    if (contains(c)) throw std::invalid_argument("customer " + std::to_string(c) + " routed twice");
    route_of_[static_cast<std::size_t>(c)] = static_cast<int>(route);
    ++routed_count_;
  }
  routes_[route].customers_ = std::move(customers);
  refresh(route);
}

void Solution::remove_empty_routes() {
  const auto before = routes_.size();
  std::erase_if(routes_, [](const Route& r) { return r.empty(); });
  if (routes_.size() == before) return;
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    for (int c : routes_[r].customers_) route_of_[static_cast<std::size_t>(c)] = static_cast<int>(r);
  }
}

double Solution::total_cost() const {
  double total = 0.0;
  for (const auto& r : routes_) total += r.cost();
  return total;
}

std::vector<std::vector<int>> Solution::to_lists() const {
  std::vector<std::vector<int>> lists;
  lists.reserve(routes_.size());
  for (const auto& r : routes_) lists.emplace_back(r.customers_.begin(), r.customers_.end());
  return lists;
}

void Solution::refresh(std::size_t route) {
  auto& r = routes_[route];
  const auto& seq = r.customers_;
  for (std::size_t i = 0; i < seq.size(); ++i) position_of_[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);
  r.cost_ = route_cost(*instance_, seq);
  r.load_ = route_load(*instance_, seq);
  r.service_ = route_service_time(*instance_, seq);
}

double fitness(const Solution& solution, const FitnessWeights& weights) {
  double total = 0.0;
  for (const auto& r : solution.routes()) total += route_fitness(solution.instance(), r, weights);
  return total;
}

bool is_feasible(const Solution& solution, double tolerance) {
  if (!solution.complete()) return false;
  const auto& instance = solution.instance();
  return std::all_of(solution.routes().begin(), solution.routes().end(), [&](const Route& r) {
    return route_overcapacity(instance, r) <= tolerance && route_overtime(instance, r) <= tolerance;
  });
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::missing_customer: return "missing customer";
    case Violation::Kind::duplicate_customer: return "duplicate customer";
    case Violation::Kind::unknown_customer: return "unknown customer";
    case Violation::Kind::overcapacity: return "overcapacity";
    case Violation::Kind::overtime: return "overtime";
  }
  return "unknown";
}

std::vector<Violation> validate(const Instance& instance, const std::vector<std::vector<int>>& routes,
                                double tolerance) {
  std::vector<Violation> violations;
  const int n = instance.customer_count();
  std::vector<int> visits(static_cast<std::size_t>(n) + 1, 0);

  for (std::size_t r = 0; r < routes.size(); ++r) {
    std::vector<int> known;
    known.reserve(routes[r].size());
    for (int c : routes[r]) {
      if (c < 1 || c > n) {
        violations.push_back({Violation::Kind::unknown_customer, c, static_cast<int>(r), 0.0});
        continue;
      }
      if (++visits[static_cast<std::size_t>(c)] == 2) {
        violations.push_back({Violation::Kind::duplicate_customer, c, static_cast<int>(r), 0.0});
      }
      known.push_back(c);
    }
    if (known.empty()) continue;
    const double over_load = overcapacity(instance, route_load(instance, known));
    if (over_load > tolerance) {
      violations.push_back({Violation::Kind::overcapacity, -1, static_cast<int>(r), over_load});
    }
    const double over_time =
        overtime(instance, route_service_time(instance, known) + route_cost(instance, known));
    if (over_time > tolerance) {
      violations.push_back({Violation::Kind::overtime, -1, static_cast<int>(r), over_time});
    }
  }
  for (int c = 1; c <= n; ++c) {
    if (visits[static_cast<std::size_t>(c)] == 0) {
      violations.push_back({Violation::Kind::missing_customer, c, -1, 0.0});
    }
  }
  return violations;
}

std::vector<Violation> validate(const Solution& solution, double tolerance) {
  return validate(solution.instance(), solution.to_lists(), tolerance);
}

std::string format_solution(const Solution& solution) {
  std::ostringstream out;
  for (const auto& r : solution.routes()) {
    if (r.empty()) continue;
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
  out << "# cost " << std::fixed << std::setprecision(6) << solution.total_cost() << '\n';
  return out.str();
}

std::vector<std::vector<int>> parse_solution(std::string_view text) {
  std::vector<std::vector<int>> routes;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::vector<int> route;
    std::size_t i = first;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      int id = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), id);
      if (ec != std::errc{}) {
        throw ParseError(line_no, "route", "expected customer ids");
      }
      i = static_cast<std::size_t>(ptr - line.data());
      if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
        throw ParseError(line_no, "route", "expected customer ids");
      }
      route.push_back(id);
    }
    routes.push_back(std::move(route));
  }
  return routes;
}

}  // namespace beesvrp
