#include "beesvrp/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace beesvrp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const Setting& s, std::string_view expected) {
  throw ConfigError(s.line, s.key, "invalid value '" + s.value + "' (expected " + std::string(expected) + ")");
}

double as_double(const Setting& s) {
  double v = 0.0;
  const auto* end = s.value.data() + s.value.size();
  const auto [ptr, ec] = std::from_chars(s.value.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) bad_value(s, "a number");
  return v;
}

std::uint64_t as_unsigned(const Setting& s) {
  std::uint64_t v = 0;
  const auto* end = s.value.data() + s.value.size();
  const auto [ptr, ec] = std::from_chars(s.value.data(), end, v);
  if (ec != std::errc{} || ptr != end) bad_value(s, "a non-negative integer");
  return v;
}

std::size_t as_size(const Setting& s) { return static_cast<std::size_t>(as_unsigned(s)); }

DestroyPolicy::Shape as_shape(const Setting& s) {
  if (s.value == "triangular") return DestroyPolicy::Shape::triangular;
  if (s.value == "uniform") return DestroyPolicy::Shape::uniform;
  bad_value(s, "triangular or uniform");
}

template <typename F>
void each_destroy(RunConfig& c, F f) {
  f(c.enhanced.destroy);
  f(c.lns.destroy);
}

template <typename F>
void each_solver(RunConfig& c, F f) {
  f(c.enhanced);
  f(c.standard_bees);
  f(c.lns);
}

using Apply = void (*)(RunConfig&, const Setting&);

struct KeyHandler {
  std::string_view key;
  Apply apply;
};

const std::array handlers{
    KeyHandler{"solver", [](RunConfig& c, const Setting& s) {
                 try {
                   c.solver = parse_solver_kind(s.value);
                 } catch (const std::invalid_argument&) {
                   bad_value(s, "enhanced, standard_bees or lns");
                 }
               }},
    KeyHandler{"profile", [](RunConfig& c, const Setting& s) {
                 try {
                   c.profile = parse_profile(s.value);
                 } catch (const std::invalid_argument&) {
                   bad_value(s, "fast or best");
                 }
                 const auto base = profile_config(c.profile);
                 c.enhanced = base;
                 c.standard_bees.time_limit = base.time_limit;
                 c.lns.time_limit = base.time_limit;
               }},
    KeyHandler{"metric", [](RunConfig& c, const Setting& s) {
                 try {
                   c.metric = parse_metric(s.value);
                 } catch (const std::invalid_argument&) {
                   bad_value(s, "euclidean or manhattan");
                 }
               }},
    KeyHandler{"time_limit",
               [](RunConfig& c, const Setting& s) { each_solver(c, [v = as_double(s)](auto& x) { x.time_limit = v; }); }},
    KeyHandler{"seed",
               [](RunConfig& c, const Setting& s) { each_solver(c, [v = as_unsigned(s)](auto& x) { x.seed = v; }); }},
    KeyHandler{"max_iterations",
               [](RunConfig& c, const Setting& s) {
                 each_solver(c, [v = as_unsigned(s)](auto& x) { x.max_iterations = v; });
               }},
    KeyHandler{"seed_routes",
               [](RunConfig& c, const Setting& s) {
                 each_solver(c, [v = as_size(s)](auto& x) { x.seed_routes = v; });
               }},
    KeyHandler{"alpha",
               [](RunConfig& c, const Setting& s) {
                 each_solver(c, [v = as_double(s)](auto& x) { x.weights.alpha = v; });
               }},
    KeyHandler{"beta",
               [](RunConfig& c, const Setting& s) {
                 each_solver(c, [v = as_double(s)](auto& x) { x.weights.beta = v; });
               }},
    KeyHandler{"gamma",
               [](RunConfig& c, const Setting& s) {
                 each_solver(c, [v = as_double(s)](auto& x) { x.weights.gamma = v; });
               }},
    KeyHandler{"initial_sites", [](RunConfig& c, const Setting& s) { c.enhanced.initial_sites = as_size(s); }},
    KeyHandler{"cull_period", [](RunConfig& c, const Setting& s) { c.enhanced.cull_period = as_size(s); }},
    KeyHandler{"cull_fraction", [](RunConfig& c, const Setting& s) { c.enhanced.cull_fraction = as_double(s); }},
    KeyHandler{"min_sites", [](RunConfig& c, const Setting& s) { c.enhanced.min_sites = as_size(s); }},
    KeyHandler{"memory_size", [](RunConfig& c, const Setting& s) { c.enhanced.memory_size = as_size(s); }},
    KeyHandler{"bees_per_position", [](RunConfig& c, const Setting& s) { c.enhanced.bees_per_position = as_size(s); }},
    KeyHandler{"extent_rate", [](RunConfig& c, const Setting& s) { c.enhanced.extent_rate = as_double(s); }},
    KeyHandler{"max_extent_fraction",
               [](RunConfig& c, const Setting& s) { c.enhanced.max_extent_fraction = as_double(s); }},
    KeyHandler{"threads", [](RunConfig& c, const Setting& s) { c.enhanced.threads = as_size(s); }},
    KeyHandler{"destroy_min",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.min_fraction = v; });
               }},
    KeyHandler{"destroy_mean",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.mean_fraction = v; });
               }},
    KeyHandler{"destroy_max",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.max_fraction = v; });
               }},
    KeyHandler{"destroy_shape",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_shape(s)](DestroyPolicy& d) { d.shape = v; });
               }},
    KeyHandler{"shaw_probability",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.shaw_probability = v; });
               }},
    KeyHandler{"shaw_distance_weight",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.relatedness.distance_weight = v; });
               }},
    KeyHandler{"shaw_adjacency_bonus",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.relatedness.adjacency_bonus = v; });
               }},
    KeyHandler{"shaw_determinism",
               [](RunConfig& c, const Setting& s) {
                 each_destroy(c, [v = as_double(s)](DestroyPolicy& d) { d.relatedness.determinism = v; });
               }},
    KeyHandler{"bees", [](RunConfig& c, const Setting& s) { c.standard_bees.bees = as_size(s); }},
    KeyHandler{"elite_sites", [](RunConfig& c, const Setting& s) { c.standard_bees.elite_sites = as_size(s); }},
    KeyHandler{"elite_recruits", [](RunConfig& c, const Setting& s) { c.standard_bees.elite_recruits = as_size(s); }},
    KeyHandler{"other_sites", [](RunConfig& c, const Setting& s) { c.standard_bees.other_sites = as_size(s); }},
    KeyHandler{"other_recruits", [](RunConfig& c, const Setting& s) { c.standard_bees.other_recruits = as_size(s); }},
    KeyHandler{"lambda_max",
               [](RunConfig& c, const Setting& s) {
                 const auto v = as_unsigned(s);
                 if (v < 1 || v > 2) bad_value(s, "1 or 2");
                 c.standard_bees.lambda_max = static_cast<int>(v);
               }},
};

const auto key_names = [] {
  std::array<std::string_view, handlers.size()> names{};
  for (std::size_t i = 0; i < handlers.size(); ++i) names[i] = handlers[i].key;
  return names;
}();

}  // namespace

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::enhanced: return "enhanced";
    case SolverKind::standard_bees: return "standard_bees";
    case SolverKind::lns: return "lns";
  }
  return "enhanced";
}

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "enhanced") return SolverKind::enhanced;
  if (text == "standard_bees") return SolverKind::standard_bees;
  if (text == "lns") return SolverKind::lns;
  throw std::invalid_argument("unknown solver '" + std::string(text) + "' (expected enhanced, standard_bees or lns)");
}

double RunConfig::time_limit() const {
  switch (solver) {
    case SolverKind::standard_bees: return standard_bees.time_limit;
    case SolverKind::lns: return lns.time_limit;
    case SolverKind::enhanced: break;
  }
  return enhanced.time_limit;
}

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                  : key + ": " + message),
      line_(line),
      key_(std::move(key)) {}

std::vector<Setting> parse_config(std::string_view text) {
  std::vector<Setting> settings;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, std::string(line), "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    if (value.empty()) throw ConfigError(line_no, std::string(key), "missing value");
    settings.push_back({std::string(key), std::string(value), line_no});
  }
  return settings;
}

std::vector<Setting> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::span<const std::string_view> config_keys() { return key_names; }

void apply_setting(RunConfig& config, const Setting& setting) {
  const auto it = std::find_if(handlers.begin(), handlers.end(),
                               [&](const KeyHandler& h) { return h.key == setting.key; });
  if (it == handlers.end()) throw ConfigError(setting.line, setting.key, "unknown key");
  it->apply(config, setting);
}

RunConfig make_run_config(std::span<const Setting> settings) {
  RunConfig config;
  // The last profile wins and is applied before everything else.
  const auto profile = std::find_if(settings.rbegin(), settings.rend(),
                                    [](const Setting& s) { return s.key == "profile"; });
  if (profile != settings.rend()) apply_setting(config, *profile);
  for (const auto& s : settings) {
    if (s.key != "profile") apply_setting(config, s);
  }
  try {
    config.enhanced.validate();
    config.standard_bees.validate();
    config.lns.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "config", e.what());
  }
  return config;
}

SolveResult run_solver(const Instance& instance, const RunConfig& config) {
  switch (config.solver) {
    case SolverKind::standard_bees: return standard_bees_solve(instance, config.standard_bees);
    case SolverKind::lns: return lns_hill_climb_solve(instance, config.lns);
    case SolverKind::enhanced: break;
  }
  return solve(instance, config.enhanced);
}

}  // namespace beesvrp
