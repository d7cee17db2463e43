#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "beesvrp/bench.hpp"
#include "beesvrp/config.hpp"
#include "beesvrp/instance.hpp"
#include "beesvrp/model.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_no_feasible = 2;

constexpr const char* threads_env = "BEESVRP_THREADS";

struct CommonOptions {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> flags;  // in command line order
};

std::string flag_name(std::string_view key) {
  std::string name(key);
  for (auto& c : name) {
    if (c == '_') c = '-';
  }
  return name;
}

// One --<key> option per config key; values are kept as text and validated by
// make_run_config in command line order.
void add_config_flags(CLI::App& app, CommonOptions& options, std::string_view skip = {}) {
  app.add_option("--config", options.config_file, "key = value config file")->check(CLI::ExistingFile);
  for (const auto key : beesvrp::config_keys()) {
    if (key == skip) continue;
    const std::string name = flag_name(key);
    app.add_option_function<std::string>(
           "--" + name,
           [&options, k = std::string(key)](const std::string& v) { options.flags.emplace_back(k, v); },
           "config key " + std::string(key))
        ->group("Config keys");
  }
}

beesvrp::RunConfig build_config(const CommonOptions& options) {
  std::vector<beesvrp::Setting> settings;
  if (const char* env = std::getenv(threads_env); env && *env) settings.push_back({"threads", env, 0});
  if (!options.config_file.empty()) {
    auto file = beesvrp::load_config(options.config_file);
    settings.insert(settings.end(), file.begin(), file.end());
  }
  for (const auto& [k, v] : options.flags) settings.push_back({k, v, 0});
  return beesvrp::make_run_config(settings);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacitated vehicle routing with the Enhanced Bees Algorithm"};
  app.require_subcommand(1);

  CommonOptions solve_options;
  std::string solve_instance;
  std::string solve_out;
  std::string solve_format;
  std::string solve_best_known = BEESVRP_DEFAULT_BEST_KNOWN;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("instance", solve_instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--out", solve_out, "Write the solution or report here instead of stdout");
  solve_cmd->add_option("--format", solve_format, "Emit a report (csv, md or json) instead of the routes")
      ->check(CLI::IsMember({"csv", "md", "markdown", "json"}));
  solve_cmd->add_option("--best-known", solve_best_known, "Best known costs used by reports");
  add_config_flags(*solve_cmd, solve_options);

  CommonOptions bench_options;
  std::string bench_dir;
  std::string bench_out;
  std::string bench_format = "md";
  std::string bench_best_known = BEESVRP_DEFAULT_BEST_KNOWN;
  std::size_t bench_runs = 10;
  std::uint64_t bench_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a solver over a directory of instances");
  bench_cmd->add_option("instance-dir", bench_dir, "Directory of instance files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--runs", bench_runs, "Runs per instance")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--best-known", bench_best_known, "Best known cost table")->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "Report file (default stdout)");
  bench_cmd->add_option("--format", bench_format, "Report format")->check(CLI::IsMember({"csv", "md", "markdown", "json"}));
  // On bench, --seed is the first seed of the run sequence.
  bench_cmd->add_option("--seed", bench_seed, "First seed; runs use seed .. seed + runs - 1");
  add_config_flags(*bench_cmd, bench_options, "seed");

  std::string convert_input;
  std::string convert_name;
  std::string convert_out;
  auto* convert_cmd = app.add_subcommand("convert", "Convert a file in the published CMT layout");
  convert_cmd->add_option("input", convert_input, "CMT file")->required()->check(CLI::ExistingFile);
  convert_cmd->add_option("--name", convert_name, "Instance name (default: file stem)");
  convert_cmd->add_option("--out", convert_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*convert_cmd) {
      if (convert_name.empty()) convert_name = std::filesystem::path(convert_input).stem().string();
      const auto text = beesvrp::convert_cmt(read_file(convert_input), convert_name);
      beesvrp::parse_instance(text);
      write_output(convert_out, text);
      return exit_ok;
    }

    if (*solve_cmd) {
      const auto config = build_config(solve_options);
      const auto instance = beesvrp::load_instance(solve_instance, config.metric);
      const auto result = beesvrp::run_solver(instance, config);
      std::cerr << "solver=" << beesvrp::to_string(config.solver) << " iterations=" << result.iterations
                << " elapsed=" << result.elapsed_seconds << "s\n";
      if (!solve_format.empty()) {
        double known = result.feasible() ? result.best_cost : 1.0;
        if (std::filesystem::exists(solve_best_known)) {
          if (auto k = beesvrp::BestKnownTable::load(solve_best_known).find(instance.name())) known = *k;
        }
        const auto record = beesvrp::make_record(instance, config, config.enhanced.seed, result, known);
        write_output(solve_out, beesvrp::emit_report(std::span(&record, 1), beesvrp::parse_report_format(solve_format)));
      } else if (result.feasible()) {
        write_output(solve_out, beesvrp::format_solution(*result.best_solution));
      }
      if (!result.feasible()) {
        std::cerr << "no feasible solution found";
        if (result.best_infeasible) {
          std::cerr << "; best infeasible candidate:\n" << beesvrp::format_solution(*result.best_infeasible);
          for (const auto& v : beesvrp::validate(*result.best_infeasible)) {
            std::cerr << "  " << beesvrp::to_string(v.kind) << " route=" << v.route << " amount=" << v.amount << '\n';
          }
        } else {
          std::cerr << '\n';
        }
        return exit_no_feasible;
      }
      return exit_ok;
    }

    if (*bench_cmd) {
      beesvrp::BenchOptions options;
      options.config = build_config(bench_options);
      options.runs = bench_runs;
      options.base_seed = bench_seed;
      options.on_record = [](const beesvrp::RunRecord& r) {
        std::cerr << r.instance << " seed=" << r.seed << " cost="
                  << (r.cost ? std::to_string(*r.cost) : std::string("infeasible")) << " gap=" << r.gap
                  << " elapsed=" << r.elapsed_seconds << "s\n";
      };
      const auto table = beesvrp::BestKnownTable::load(bench_best_known);
      const auto instances = beesvrp::load_instance_dir(bench_dir, options.config.metric);
      if (instances.empty()) throw std::invalid_argument("no instance files in '" + bench_dir + "'");
      const auto records = beesvrp::run_benchmark(instances, table, options);
      write_output(bench_out, beesvrp::emit_report(records, beesvrp::parse_report_format(bench_format)));
      for (const auto& best : beesvrp::best_per_instance(records)) {
        if (!best.cost) return exit_no_feasible;
      }
      return exit_ok;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
