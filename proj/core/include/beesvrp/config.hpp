#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beesvrp/baselines.hpp"
#include "beesvrp/instance.hpp"
#include "beesvrp/solver.hpp"

namespace beesvrp {

enum class SolverKind { enhanced, standard_bees, lns };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view text);

// Everything one solve needs: which solver, and the parameters of each.
struct RunConfig {
  SolverKind solver = SolverKind::enhanced;
  Profile profile = Profile::fast;
  Metric metric = Metric::euclidean;
  SolverConfig enhanced = profile_config(Profile::fast);
  StandardBeesConfig standard_bees;
  LnsConfig lns;

  double time_limit() const;
};

// A `key = value` pair; line 0 means it did not come from a file.
struct Setting {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
std::vector<Setting> parse_config(std::string_view text);
std::vector<Setting> load_config(const std::string& path);

// Every recognised key, in documentation order.
std::span<const std::string_view> config_keys();

// Applies `profile` first, then the remaining settings in order, so later
// settings override earlier ones. Throws ConfigError on unknown keys or
// malformed values, and on parameter combinations that fail validation.
RunConfig make_run_config(std::span<const Setting> settings);

void apply_setting(RunConfig& config, const Setting& setting);

SolveResult run_solver(const Instance& instance, const RunConfig& config);

}  // namespace beesvrp
