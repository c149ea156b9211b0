// Command-line front end: experiment grids, config checks, scenario dumps
// and replays.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgesim/error.hpp"
#include "edgesim/runner.hpp"

namespace {

using namespace edgesim;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
}

// "1,2,5" or "1-10" or a mix such as "1-3,7".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        const std::uint64_t lo = std::stoull(item.substr(0, dash));
        const std::uint64_t hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw Error(ErrorCode::InvalidConfig, "empty seed range " + item);
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidConfig, "bad seed list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidConfig, "empty seed list");
  return out;
}

// "memory_mb=100,200,300"
void parse_sweep(const std::string& text, ExperimentConfig& cfg) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "sweep must look like axis=v1,v2");
  cfg.sweep_axis = text.substr(0, eq);
  cfg.sweep_values.clear();
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      cfg.sweep_values.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidConfig, "bad sweep value '" + item + "'");
    }
  }
}

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge model caching and routing simulator"};
  app.require_subcommand(1);

  std::string config_path, sweep, seeds, out_dir, scenario_path, policy_name, csv_path;
  std::vector<std::string> policies;
  int jobs = 1;
  bool decision_log = false;
  std::uint64_t seed = 1;
  int models = 8;

  auto* run = app.add_subcommand("run", "Run a policy x sweep x seed grid");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--policy", policies, "Policy name; repeatable, overrides the config list");
  run->add_option("--sweep", sweep, "axis=v1,v2,... (memory_mb, zipf_skew, popularity_period, window_s, slots, users)");
  run->add_option("--seeds", seeds, "Seed list such as 1,2,3 or 1-10");
  run->add_option("--out", out_dir, "Output directory (EDGESIM_OUT overrides the config)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--decision-log", decision_log, "Write online cache decisions as JSON lines");

  auto* validate = app.add_subcommand("validate-config", "Check a config and print it with defaults filled in");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  auto* dump = app.add_subcommand("dump-scenario", "Write the generated workload of one seed");
  dump->add_option("--config", config_path, "Experiment config (JSON); defaults when omitted");
  dump->add_option("--seed", seed, "Workload seed");
  dump->add_option("--sweep", sweep, "Single sweep value, axis=v");
  dump->add_option("--out", scenario_path, "Output file")->required();

  auto* replay = app.add_subcommand("replay", "Run one policy on a dumped workload");
  replay->add_option("--scenario", scenario_path, "Workload dump (JSON)")->required();
  replay->add_option("--policy", policy_name, "Policy name")->required();
  replay->add_option("--config", config_path, "Config supplying policy parameters");
  replay->add_option("--seed", seed, "Seed for the policy's random streams");
  replay->add_option("--csv", csv_path, "Write per-period records here");

  auto* catalog = app.add_subcommand("catalog", "Print the built-in model catalog");
  catalog->add_option("--models", models, "Number of model types")->check(CLI::PositiveNumber);
  catalog->add_option("--out", out_dir, "Output file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config_path);
      if (!policies.empty()) cfg.policies = policies;
      if (!sweep.empty()) parse_sweep(sweep, cfg);
      if (!seeds.empty()) cfg.seeds = parse_seeds(seeds);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (const char* env = std::getenv("EDGESIM_OUT"); env && *env) cfg.out_dir = env;
      if (decision_log) cfg.decision_log = true;
      cfg.validate();
      const auto outcomes = run_experiment(cfg, jobs);
      int failed = 0;
      for (const CellOutcome& o : outcomes) {
        if (o.ok) {
          std::cout << o.cell.run_id() << "  precision " << o.metrics->avg_inference_precision << "  qoe "
                    << o.metrics->avg_qoe << "  hit " << o.metrics->hit_rate << "  util "
                    << o.metrics->memory_utilization << "\n";
        } else {
          ++failed;
          std::cerr << o.cell.run_id() << "  FAILED: " << o.error << "\n";
        }
      }
      std::cout << outcomes.size() - static_cast<std::size_t>(failed) << " of " << outcomes.size()
                << " cells succeeded; results in " << cfg.out_dir << "\n";
      return failed == 0 ? 0 : 1;
    }
    if (*validate) {
      const ExperimentConfig cfg = load_config(config_path);
      std::cout << config_to_json(cfg);
      std::cerr << expand_cells(cfg).size() << " cells\n";
      return 0;
    }
    if (*dump) {
      ExperimentConfig cfg = config_or_default(config_path);
      Cell cell;
      cell.seed = seed;
      if (!sweep.empty()) {
        parse_sweep(sweep, cfg);
        if (cfg.sweep_values.size() != 1) throw Error(ErrorCode::InvalidConfig, "dump takes one sweep value");
        cell.sweep_value = cfg.sweep_values.front();
      }
      const Workload w = cell_workload(cfg, cell, experiment_catalog(cfg));
      spit(scenario_path, workload_to_json(w));
      return 0;
    }
    if (*replay) {
      ExperimentConfig cfg = config_or_default(config_path);
      const Workload w = workload_from_json(slurp(scenario_path));
      cfg.mode = w.mode;
      const PolicyId id = parse_policy(policy_name, w.mode == Mode::Offline);
      const auto records = run_policy(cfg, w, id, "replay/" + id.name() + "/" + std::to_string(seed), seed);
      if (!csv_path.empty()) spit(csv_path, to_csv(records));
      std::cout << metrics_json(aggregate(records));
      return 0;
    }
    if (*catalog) {
      const std::string text = catalog_to_json(default_catalog(models));
      if (out_dir.empty()) {
        std::cout << text;
      } else {
        spit(out_dir, text);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
