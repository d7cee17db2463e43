#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace beesvrp {

enum class Metric { euclidean, manhattan };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Customer {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double service_time = 0.0;
};

double distance(Point a, Point b, Metric metric);

// Raised for malformed instance text; carries the offending line and field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Immutable CVRP instance. Vertex 0 is the depot, vertices 1..n the customers.
// Owns the dense distance matrix and per-customer candidate lists.
class Instance {
 public:
  Instance(std::string name, Point depot, std::vector<Customer> customers, double capacity,
           std::optional<double> max_duration, Metric metric = Metric::euclidean);

  const std::string& name() const { return name_; }
  Point depot() const { return depot_; }
  int customer_count() const { return static_cast<int>(customers_.size()); }
  std::span<const Customer> customers() const { return customers_; }
  const Customer& customer(int id) const { return customers_[static_cast<std::size_t>(id - 1)]; }
  Point location(int vertex) const;

  double capacity() const { return capacity_; }
  const std::optional<double>& max_duration() const { return max_duration_; }
  Metric metric() const { return metric_; }

  double demand(int vertex) const { return vertex == 0 ? 0.0 : customer(vertex).demand; }
  double service_time(int vertex) const { return vertex == 0 ? 0.0 : customer(vertex).service_time; }
  double total_demand() const { return total_demand_; }

  double cost(int a, int b) const {
    return costs_[static_cast<std::size_t>(a) * vertex_count_ + static_cast<std::size_t>(b)];
  }

  // Customers other than `customer`, by ascending distance then ascending id.
  std::span<const int> neighbours(int customer) const;

  // Mean over all nonzero edge costs between distinct vertices.
  double mean_edge_cost() const { return mean_edge_cost_; }

 private:
  std::string name_;
  Point depot_;
  std::vector<Customer> customers_;
  double capacity_;
  std::optional<double> max_duration_;
  Metric metric_;
  double total_demand_ = 0.0;

  std::size_t vertex_count_ = 0;
  std::vector<double> costs_;
  std::vector<int> neighbours_;
  double mean_edge_cost_ = 0.0;
};

// Parses the line-oriented instance format:
//
//   NAME: <name>
//   CAPACITY: <q>
//   MAX_DURATION: <t>      (optional)
//   SERVICE_TIME: <s>      (optional, applied to every customer)
//   DEPOT: <x> <y>
//   CUSTOMERS:
//   <id> <x> <y> <demand>
//
// Blank lines and lines starting with '#' are ignored.
Instance parse_instance(std::string_view text, Metric metric = Metric::euclidean);
Instance load_instance(const std::string& path, Metric metric = Metric::euclidean);

std::string serialize_instance(const Instance& instance);

// Converts the published CMT layout (`n q t s`, depot line, then `x y d` per
// customer) into the format above. A duration of 0 or >= 999999 means unlimited.
std::string convert_cmt(std::string_view text, const std::string& name);

}  // namespace beesvrp
