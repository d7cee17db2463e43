#include "beesvrp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace beesvrp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV line honouring double-quoted fields.
std::vector<std::string> csv_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

constexpr std::string_view csv_header = "instance,solver,profile,seed,cost,best_known,gap,suspect,elapsed_s,iterations";

}  // namespace

BestKnownTable BestKnownTable::parse(std::string_view text) {
  BestKnownTable table;
  std::size_t line_no = 0;
  for (auto line : lines_of(text)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError(line_no, "cost", "expected '<name> <cost>'");
    const std::string name(line.substr(0, space));
    double cost = 0.0;
    if (!parse_number(trim(line.substr(space)), cost)) throw ParseError(line_no, "cost", "not a number");
    if (!(cost > 0.0) || !std::isfinite(cost)) throw ParseError(line_no, "cost", "best known cost must be positive");
    if (table.find(name)) throw ParseError(line_no, "name", "duplicate instance '" + name + "'");
    table.insert(name, cost);
  }
  return table;
}

BestKnownTable BestKnownTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open best known file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

void BestKnownTable::insert(const std::string& name, double cost) {
  if (!(cost > 0.0)) throw std::invalid_argument("best known cost must be positive");
  costs_[name] = cost;
}

std::optional<double> BestKnownTable::find(std::string_view name) const {
  const auto it = costs_.find(name);
  if (it == costs_.end()) return std::nullopt;
  return it->second;
}

double BestKnownTable::at(std::string_view name) const {
  const auto cost = find(name);
  if (!cost) throw std::out_of_range("no best known cost for '" + std::string(name) + "'");
  return *cost;
}

Gap compute_gap(std::optional<double> cost, double best_known) {
  if (!(best_known > 0.0)) throw std::invalid_argument("best known cost must be positive");
  if (!cost) return {0.0, false};
  if (!(*cost > 0.0)) return {1.0 + gap_tolerance, true};
  const double g = best_known / *cost;
  if (g > 1.0 + gap_tolerance) return {1.0 + gap_tolerance, true};
  return {g, false};
}

RunRecord make_record(const Instance& instance, const RunConfig& config, std::uint64_t seed,
                      const SolveResult& result, double best_known) {
  RunRecord r;
  r.instance = instance.name();
  r.solver = std::string(to_string(config.solver));
  r.profile = std::string(to_string(config.profile));
  r.seed = seed;
  if (result.feasible()) r.cost = result.best_cost;
  const auto g = compute_gap(r.cost, best_known);
  r.best_known = best_known;
  r.gap = g.value;
  r.suspect = g.suspect;
  r.elapsed_seconds = result.elapsed_seconds;
  r.iterations = result.iterations;
  r.trace = result.trace;
  return r;
}

std::vector<RunRecord> run_benchmark(std::span<const Instance> instances, const BestKnownTable& best_known,
                                     const BenchOptions& options) {
  if (options.runs == 0) throw std::invalid_argument("runs must be at least 1");
  for (const auto& instance : instances) {
    if (!best_known.find(instance.name())) {
      throw std::invalid_argument("no best known cost for instance '" + instance.name() + "'");
    }
  }
  std::vector<RunRecord> records;
  for (const auto& instance : instances) {
    const double known = best_known.at(instance.name());
    for (std::size_t run = 0; run < options.runs; ++run) {
      const auto seed = options.base_seed + run;
      RunConfig config = options.config;
      config.enhanced.seed = seed;
      config.standard_bees.seed = seed;
      config.lns.seed = seed;
      records.push_back(make_record(instance, config, seed, run_solver(instance, config), known));
      if (options.on_record) options.on_record(records.back());
    }
  }
  return records;
}

std::vector<Instance> load_instance_dir(const std::string& directory, Metric metric) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw std::invalid_argument("not a directory: '" + directory + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().filename().string().front() != '.') files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Instance> instances;
  for (const auto& f : files) instances.push_back(load_instance(f.string(), metric));
  return instances;
}

std::vector<RunRecord> best_per_instance(std::span<const RunRecord> records) {
  std::vector<RunRecord> best;
  for (const auto& r : records) {
    auto it = std::find_if(best.begin(), best.end(), [&](const RunRecord& b) { return b.instance == r.instance; });
    if (it == best.end()) {
      best.push_back(r);
    } else if (r.cost && (!it->cost || *r.cost < *it->cost)) {
      *it = r;
    }
  }
  return best;
}

double mean_gap(std::span<const RunRecord> records) {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) sum += r.gap;
  return sum / static_cast<double>(records.size());
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "md" || text == "markdown") return ReportFormat::markdown;
  if (text == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + std::string(text) + "' (expected csv, md or json)");
}

std::string emit_report(std::span<const RunRecord> records, ReportFormat format) {
  if (records.empty()) throw std::invalid_argument("no records to report");
  const auto best = best_per_instance(records);
  const double average = mean_gap(best);
  std::ostringstream out;

  switch (format) {
    case ReportFormat::csv: {
      out << csv_header << '\n';
      for (const auto& r : best) {
        out << csv_field(r.instance) << ',' << csv_field(r.solver) << ',' << csv_field(r.profile) << ',' << r.seed
            << ',' << (r.cost ? exact(*r.cost) : "") << ',' << exact(r.best_known) << ',' << exact(r.gap) << ','
            << (r.suspect ? 1 : 0) << ',' << exact(r.elapsed_seconds) << ',' << r.iterations << '\n';
      }
      out << "Average,,,,,," << exact(average) << ",,,\n";
      break;
    }
    case ReportFormat::markdown: {
      out << "| Instance | Result | % | Best Known |\n";
      out << "|---|---:|---:|---:|\n";
      for (const auto& r : best) {
        out << "| " << r.instance << " | ";
        if (r.cost) {
          out << fixed(*r.cost, 2) << " | " << fixed(100.0 * r.gap, 2) << "%" << (r.suspect ? " (suspect)" : "");
        } else {
          out << "infeasible | infeasible";
        }
        out << " | " << fixed(r.best_known, 2) << " |\n";
      }
      out << "| Average | | " << fixed(100.0 * average, 2) << "% | |\n";
      break;
    }
    case ReportFormat::json: {
      auto record_json = [](const RunRecord& r, bool with_trace) {
        nlohmann::json j{{"instance", r.instance},   {"solver", r.solver},
                         {"profile", r.profile},     {"seed", r.seed},
                         {"best_known", r.best_known}, {"gap", r.gap},
                         {"suspect", r.suspect},     {"elapsed_s", r.elapsed_seconds},
                         {"iterations", r.iterations}};
        j["cost"] = r.cost ? nlohmann::json(*r.cost) : nlohmann::json(nullptr);
        if (with_trace) {
          auto trace = nlohmann::json::array();
          for (const auto& p : r.trace) trace.push_back({{"elapsed_s", p.seconds}, {"cost", p.cost}});
          j["trace"] = std::move(trace);
        }
        return j;
      };
      nlohmann::json doc;
      doc["instances"] = nlohmann::json::array();
      for (const auto& r : best) doc["instances"].push_back(record_json(r, false));
      doc["mean_gap"] = average;
      doc["runs"] = nlohmann::json::array();
      for (const auto& r : records) doc["runs"].push_back(record_json(r, true));
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

CsvReport parse_csv_report(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines.front()) != csv_header) throw ParseError(1, "header", "unexpected CSV header");
  CsvReport report;
  bool summary = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line_no = i + 1;
    const auto f = csv_fields(lines[i]);
    if (f.size() != 10) throw ParseError(line_no, "row", "expected 10 fields");
    auto number = [&](const std::string& s, std::string_view field, auto& out) {
      if (!parse_number(std::string_view(s), out)) throw ParseError(line_no, std::string(field), "not a number");
    };
    if (f[0] == "Average" && f[1].empty()) {
      number(f[6], "gap", report.mean_gap);
      summary = true;
      continue;
    }
    RunRecord r;
    r.instance = f[0];
    r.solver = f[1];
    r.profile = f[2];
    number(f[3], "seed", r.seed);
    if (!f[4].empty()) {
      double cost = 0.0;
      number(f[4], "cost", cost);
      r.cost = cost;
    }
    number(f[5], "best_known", r.best_known);
    number(f[6], "gap", r.gap);
    r.suspect = f[7] == "1";
    number(f[8], "elapsed_s", r.elapsed_seconds);
    number(f[9], "iterations", r.iterations);
    report.rows.push_back(std::move(r));
  }
  if (!summary) throw ParseError(lines.size(), "Average", "missing summary row");
  return report;
}

}  // namespace beesvrp
