#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edgesim/baselines.hpp"
#include "edgesim/metrics.hpp"
#include "edgesim/workload.hpp"

namespace edgesim {

/// One experiment: a scenario template, the policies to compare, the seeds
/// and an optional one-dimensional sweep.
struct ExperimentConfig {
  Mode mode = Mode::Offline;
  WorkloadConfig workload;
  std::string catalog_path;  // empty: built-in catalog

  QoEParams qoe{0.0, 0.9, 0.9};
  bool auto_theta = true;  // theta = minimum achievable latency of the scenario
  int rounds = 3;
  int history_slots = 10;
  int horizon_slots = 5;
  double mad_decay = 0.8;
  std::int64_t enumeration_limit = 100000;

  int repeats = 1;
  bool presolve = true;
  int variable_cap = 20000;

  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> policies;  // empty: every policy of the mode
  std::string sweep_axis;             // empty: no sweep
  std::vector<double> sweep_values;
  std::string out_dir = "out";
  bool decision_log = false;

  void validate() const;
};

/// Sweepable axes: memory_mb, zipf_skew, popularity_period, window_s, slots,
/// users.
extern const std::vector<std::string> kSweepAxes;

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// Apply one sweep value to a scenario template.
void apply_sweep(WorkloadConfig& workload, Mode mode, const std::string& axis, double value);

/// The default policy list of a mode.
std::vector<std::string> default_policies(Mode mode);

/// One (sweep value, policy, seed) combination.
struct Cell {
  std::string sweep_label;  // "memory_mb=300" or "default"
  std::optional<double> sweep_value;
  PolicyId policy;
  std::uint64_t seed = 1;

  std::string run_id() const;
  /// Relative output path without extension.
  std::string relative_path() const;
};

std::vector<Cell> expand_cells(const ExperimentConfig& cfg);

ModelCatalog experiment_catalog(const ExperimentConfig& cfg);
/// The workload a cell runs on.
Workload cell_workload(const ExperimentConfig& cfg, const Cell& cell, const ModelCatalog& catalog);

/// Run one policy over a materialized workload. The decision log, when
/// given, receives one JSON line per online cache switch.
std::vector<PeriodRecord> run_policy(const ExperimentConfig& cfg, const Workload& workload,
                                     const PolicyId& policy, const std::string& run_id,
                                     std::uint64_t seed, std::ostream* decision_log = nullptr);

std::vector<PeriodRecord> run_cell(const ExperimentConfig& cfg, const Cell& cell);

struct CellOutcome {
  Cell cell;
  bool ok = false;
  std::string error;
  std::optional<RunMetrics> metrics;
};

/// Runs every cell on `jobs` worker threads, writes
/// <out>/<sweep>/<policy>/<seed>.csv plus a .json summary per cell, and a
/// collated <out>/summary.csv once all cells are done.
std::vector<CellOutcome> run_experiment(const ExperimentConfig& cfg, int jobs);

}  // namespace edgesim
