#include "beesvrp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace beesvrp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_number(std::string_view token, std::size_t line, const std::string& field) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, field, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

int parse_id(std::string_view token, std::size_t line) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "id", "expected an integer customer id, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string format_number(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "manhattan";
}

Metric parse_metric(std::string_view text) {
  if (text == "euclidean") return Metric::euclidean;
  if (text == "manhattan") return Metric::manhattan;
  throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

double distance(Point a, Point b, Metric metric) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  if (metric == Metric::manhattan) return std::abs(dx) + std::abs(dy);
  return std::sqrt(dx * dx + dy * dy);
}

ParseError::ParseError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field " + field + ": " + message),
      line_(line),
      field_(std::move(field)) {}

Instance::Instance(std::string name, Point depot, std::vector<Customer> customers, double capacity,
                   std::optional<double> max_duration, Metric metric)
    : name_(std::move(name)),
      depot_(depot),
      customers_(std::move(customers)),
      capacity_(capacity),
      max_duration_(max_duration),
      metric_(metric) {
  if (customers_.empty()) throw std::invalid_argument("instance needs at least one customer");
  if (!(capacity_ > 0.0)) throw std::invalid_argument("capacity must be positive");
  if (max_duration_ && !(*max_duration_ > 0.0)) {
    throw std::invalid_argument("max duration must be positive when present");
  }

  std::sort(customers_.begin(), customers_.end(),
            [](const Customer& a, const Customer& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < customers_.size(); ++i) {
    const auto& c = customers_[i];
    if (c.id != static_cast<int>(i) + 1) {
      throw std::invalid_argument("customer ids must be unique and cover 1..n");
    }
    if (!(c.demand > 0.0) || c.demand > capacity_) {
      throw std::invalid_argument("customer " + std::to_string(c.id) + " demand must be in (0, capacity]");
    }
    if (c.service_time < 0.0) {
      throw std::invalid_argument("customer " + std::to_string(c.id) + " has negative service time");
    }
    total_demand_ += c.demand;
  }

  const int n = customer_count();
  vertex_count_ = static_cast<std::size_t>(n) + 1;
  costs_.assign(vertex_count_ * vertex_count_, 0.0);
  double edge_sum = 0.0;
  std::size_t edge_count = 0;
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const double c = distance(location(a), location(b), metric_);
      costs_[static_cast<std::size_t>(a) * vertex_count_ + static_cast<std::size_t>(b)] = c;
      costs_[static_cast<std::size_t>(b) * vertex_count_ + static_cast<std::size_t>(a)] = c;
      if (c > 0.0) {
        edge_sum += c;
        ++edge_count;
      }
    }
  }
  mean_edge_cost_ = edge_count > 0 ? edge_sum / static_cast<double>(edge_count) : 1.0;

  const auto stride = static_cast<std::size_t>(n - 1);
  neighbours_.resize(static_cast<std::size_t>(n) * stride);
  std::vector<int> order;
  order.reserve(stride);
  for (int v = 1; v <= n; ++v) {
    order.clear();
    for (int j = 1; j <= n; ++j) {
      if (j != v) order.push_back(j);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double ca = cost(v, a);
      const double cb = cost(v, b);
      return ca < cb || (ca == cb && a < b);
    });
    std::copy(order.begin(), order.end(), neighbours_.begin() + static_cast<std::ptrdiff_t>((v - 1) * stride));
  }
}

Point Instance::location(int vertex) const {
  if (vertex == 0) return depot_;
  const auto& c = customer(vertex);
  return {c.x, c.y};
}

std::span<const int> Instance::neighbours(int customer) const {
  const auto stride = static_cast<std::size_t>(customer_count() - 1);
  return std::span<const int>(neighbours_).subspan(static_cast<std::size_t>(customer - 1) * stride, stride);
}

Instance parse_instance(std::string_view text, Metric metric) {
  std::string name;
  std::optional<double> capacity;
  std::optional<double> max_duration;
  double service_time = 0.0;
  std::optional<Point> depot;
  std::vector<Customer> customers;
  std::vector<std::size_t> customer_lines;
  std::set<int> seen_ids;
  bool in_customers = false;

  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    const auto colon = line.find(':');
    if (in_customers && colon == std::string_view::npos) {
      const auto tokens = split_ws(line);
      if (tokens.size() != 4 && tokens.size() != 5) {
        throw ParseError(line_no, "customer", "expected '<id> <x> <y> <demand> [service]'");
      }
      Customer c;
      c.id = parse_id(tokens[0], line_no);
      c.x = parse_number(tokens[1], line_no, "x");
      c.y = parse_number(tokens[2], line_no, "y");
      c.demand = parse_number(tokens[3], line_no, "demand");
      c.service_time = tokens.size() == 5 ? parse_number(tokens[4], line_no, "service") : -1.0;
      if (c.id < 1) throw ParseError(line_no, "id", "customer ids start at 1");
      if (!seen_ids.insert(c.id).second) {
        throw ParseError(line_no, "id", "duplicate customer id " + std::to_string(c.id));
      }
      if (c.demand < 0.0) throw ParseError(line_no, "demand", "negative demand");
      if (c.demand == 0.0) throw ParseError(line_no, "demand", "demand must be positive");
      if (tokens.size() == 5 && c.service_time < 0.0) {
        throw ParseError(line_no, "service", "negative service time");
      }
      customers.push_back(c);
      customer_lines.push_back(line_no);
      continue;
    }
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "header", "expected 'KEY: value', got '" + std::string(line) + "'");
    }

    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));
    const auto tokens = split_ws(value);
    const std::string field(key);
    auto single_number = [&]() {
      if (tokens.size() != 1) throw ParseError(line_no, field, "expected one value");
      return parse_number(tokens[0], line_no, field);
    };

    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "CAPACITY") {
      capacity = single_number();
      if (!(*capacity > 0.0)) throw ParseError(line_no, field, "capacity must be positive");
    } else if (key == "MAX_DURATION") {
      max_duration = single_number();
      if (!(*max_duration > 0.0)) throw ParseError(line_no, field, "max duration must be positive");
    } else if (key == "SERVICE_TIME") {
      service_time = single_number();
      if (service_time < 0.0) throw ParseError(line_no, field, "service time must be non-negative");
    } else if (key == "DEPOT") {
      if (tokens.size() != 2) throw ParseError(line_no, field, "expected '<x> <y>'");
      depot = Point{parse_number(tokens[0], line_no, "depot x"), parse_number(tokens[1], line_no, "depot y")};
    } else if (key == "CUSTOMERS") {
      if (!tokens.empty()) throw ParseError(line_no, field, "customer rows start on the next line");
      in_customers = true;
    } else {
      throw ParseError(line_no, field, "unknown header key");
    }
  }

  const std::size_t last_line = lines.size();
  if (!capacity) throw ParseError(last_line, "CAPACITY", "missing CAPACITY header");
  if (!depot) throw ParseError(last_line, "DEPOT", "missing DEPOT header");
  if (customers.empty()) throw ParseError(last_line, "CUSTOMERS", "no customers");

  // Demand and id coverage errors point at the offending customer row.
  for (std::size_t i = 0; i < customers.size(); ++i) {
    auto& c = customers[i];
    if (c.demand > *capacity) {
      throw ParseError(customer_lines[i], "demand",
                       "customer " + std::to_string(c.id) + " demand exceeds capacity");
    }
    if (c.id > static_cast<int>(customers.size())) {
      throw ParseError(customer_lines[i], "id", "customer ids must cover 1..n without gaps");
    }
    if (c.service_time < 0.0) c.service_time = service_time;
  }

  return Instance(std::move(name), *depot, std::move(customers), *capacity, max_duration, metric);
}

Instance load_instance(const std::string& path, Metric metric) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), metric);
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "NAME: " << instance.name() << '\n';
  out << "CAPACITY: " << format_number(instance.capacity()) << '\n';
  if (instance.max_duration()) out << "MAX_DURATION: " << format_number(*instance.max_duration()) << '\n';

  const auto customers = instance.customers();
  const double first_service = customers.front().service_time;
  const bool uniform = std::all_of(customers.begin(), customers.end(),
                                   [&](const Customer& c) { return c.service_time == first_service; });
  if (uniform && first_service != 0.0) out << "SERVICE_TIME: " << format_number(first_service) << '\n';

  out << "DEPOT: " << format_number(instance.depot().x) << ' ' << format_number(instance.depot().y) << '\n';
  out << "CUSTOMERS:\n";
  for (const auto& c : customers) {
    out << c.id << ' ' << format_number(c.x) << ' ' << format_number(c.y) << ' ' << format_number(c.demand);
    if (!uniform) out << ' ' << format_number(c.service_time);
    out << '\n';
  }
  return out.str();
}

std::string convert_cmt(std::string_view text, const std::string& name) {
  std::vector<std::string_view> tokens;
  std::vector<std::size_t> token_lines;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (auto t : split_ws(lines[i])) {
      tokens.push_back(t);
      token_lines.push_back(i + 1);
    }
  }
  std::size_t cursor = 0;
  auto next = [&](const std::string& field) {
    if (cursor >= tokens.size()) {
      throw ParseError(lines.size(), field, "unexpected end of CMT file");
    }
    const auto line = token_lines[cursor];
    return parse_number(tokens[cursor++], line, field);
  };

  const double n_value = next("n");
  if (n_value < 1 || n_value != std::floor(n_value)) throw ParseError(1, "n", "customer count must be a positive integer");
  const auto n = static_cast<int>(n_value);
  const double capacity = next("q");
  const double duration = next("t");
  const double drop = next("s");
  const double depot_x = next("depot x");
  const double depot_y = next("depot y");

  std::ostringstream out;
  out << "NAME: " << name << '\n';
  out << "CAPACITY: " << format_number(capacity) << '\n';
  if (duration > 0.0 && duration < 999999.0) out << "MAX_DURATION: " << format_number(duration) << '\n';
  if (drop > 0.0) out << "SERVICE_TIME: " << format_number(drop) << '\n';
  out << "DEPOT: " << format_number(depot_x) << ' ' << format_number(depot_y) << '\n';
  out << "CUSTOMERS:\n";
  for (int id = 1; id <= n; ++id) {
    const double x = next("x");
    const double y = next("y");
    const double d = next("demand");
    out << id << ' ' << format_number(x) << ' ' << format_number(y) << ' ' << format_number(d) << '\n';
  }
  return out.str();
}

}  // namespace beesvrp
