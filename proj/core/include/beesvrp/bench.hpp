#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beesvrp/config.hpp"
#include "beesvrp/instance.hpp"
#include "beesvrp/search.hpp"

namespace beesvrp {

// Instance name -> best known cost.
class BestKnownTable {
 public:
  // Lines of `<name> <cost>`; `#` comments. Throws ParseError on malformed
  // lines, duplicates and non-positive costs.
  static BestKnownTable parse(std::string_view text);
  static BestKnownTable load(const std::string& path);

  void insert(const std::string& name, double cost);
  std::optional<double> find(std::string_view name) const;
  // Throws std::out_of_range for unknown names.
  double at(std::string_view name) const;
  std::size_t size() const { return costs_.size(); }
  const std::map<std::string, double, std::less<>>& entries() const { return costs_; }

 private:
  std::map<std::string, double, std::less<>> costs_;
};

// Gaps above one are clamped to this and flagged as suspect.
constexpr double gap_tolerance = 1e-9;

struct Gap {
  double value = 0.0;
  bool suspect = false;
};

// best_known / cost; 0 for an infeasible run. Throws std::invalid_argument
// when best_known <= 0.
Gap compute_gap(std::optional<double> cost, double best_known);

struct RunRecord {
  std::string instance;
  std::string solver;
  std::string profile;
  std::uint64_t seed = 0;
  std::optional<double> cost;  // empty when infeasible
  double best_known = 0.0;
  double gap = 0.0;
  bool suspect = false;
  double elapsed_seconds = 0.0;
  std::uint64_t iterations = 0;
  std::vector<TracePoint> trace;
};

RunRecord make_record(const Instance& instance, const RunConfig& config, std::uint64_t seed,
                      const SolveResult& result, double best_known);

struct BenchOptions {
  RunConfig config;
  std::size_t runs = 10;
  std::uint64_t base_seed = 1;
  // Called after every run, in order.
  std::function<void(const RunRecord&)> on_record;
};

// Runs seeds base_seed .. base_seed + runs - 1 on every instance. Throws
// std::invalid_argument when runs is 0 or an instance has no best known cost.
std::vector<RunRecord> run_benchmark(std::span<const Instance> instances, const BestKnownTable& best_known,
                                     const BenchOptions& options);

// Instance files of a directory, in file name order.
std::vector<Instance> load_instance_dir(const std::string& directory, Metric metric = Metric::euclidean);

// Lowest-cost feasible record of each instance (ties: earlier record), in
// order of first appearance; infeasible instances keep their first record.
std::vector<RunRecord> best_per_instance(std::span<const RunRecord> records);
double mean_gap(std::span<const RunRecord> records);

enum class ReportFormat { csv, markdown, json };

ReportFormat parse_report_format(std::string_view text);

// Per-instance best rows then an `Average` summary row. JSON also carries
// every run with its trace. Throws std::invalid_argument on empty records.
std::string emit_report(std::span<const RunRecord> records, ReportFormat format);

struct CsvReport {
  std::vector<RunRecord> rows;  // traces are not part of the CSV layout
  double mean_gap = 0.0;
};

// Reads the CSV produced by emit_report. Throws ParseError.
CsvReport parse_csv_report(std::string_view text);

}  // namespace beesvrp
