#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgesim/rng.hpp"
#include "edgesim/scenario.hpp"

namespace edgesim {

enum class Mode { Offline, Online };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// Knobs for scenario generation. Defaults follow the reference evaluation
/// setup (5 BSs, 600 users, 8 model types, Zipf 0.8, ...).
struct WorkloadConfig {
  std::uint64_t seed = 1;
  int bs_count = 5;
  int users = 600;
  int models = 8;
  double zipf_skew = 0.8;

  double window_s = 3.0;
  int windows = 10;
  int popularity_period_windows = 5;  // <= 0: never changes

  double slot_s = 0.5;
  int slots = 100;
  int popularity_period_slots = 20;  // <= 0: never changes
  int warmup_slots = 5;

  double edge_probability = 0.5;
  double coverage_m = 150.0;  // informational; homes are drawn uniformly

  double memory_mb = 500.0;
  double compute_gflops = 70.0;
  double cloud_mbps = 800.0;
  double wireless_mbps = 20.0;
  double wired_mbps = 100.0;
  double per_hop_s = 0.01;

  double data_mb = 0.144;
  double deadline_s = 0.3;

  void validate() const;
};

/// Per-period probability vectors over model types. Offline schedules hold a
/// single global vector per window; online schedules hold one per BS.
struct PopularitySchedule {
  bool per_bs = false;
  std::vector<std::vector<std::vector<double>>> vectors;  // [period][bs or 0][model]

  int periods() const { return static_cast<int>(vectors.size()); }
  const std::vector<double>& at(int period, int bs) const;
};

/// Rank weights i^-s / sum_j j^-s, most popular first.
std::vector<double> zipf_weights(int count, double skew);
/// Zipf weights assigned to model ids through a random permutation.
std::vector<double> zipf_popularity(int count, double skew, Rng& rng);
/// (1 - k/K) * old + (k/K) * next, renormalized.
std::vector<double> warmup_interpolate(const std::vector<double>& old_p,
                                       const std::vector<double>& new_p, int k, int total);

/// Erdős–Rényi graph, resampled until connected, with BFS hop counts.
Network gen_topology(const WorkloadConfig& cfg);
std::vector<std::vector<int>> bfs_hops(const std::vector<std::vector<bool>>& adjacency);

PopularitySchedule offline_schedule(const WorkloadConfig& cfg);
PopularitySchedule online_schedule(const WorkloadConfig& cfg);

std::vector<Request> gen_requests(const WorkloadConfig& cfg, const PopularitySchedule& schedule,
                                  int period, Mode mode);

/// A fully materialized, replayable workload.
struct Workload {
  Mode mode = Mode::Offline;
  WorkloadConfig config;
  Network network;
  ModelCatalog catalog;
  PopularitySchedule schedule;
  std::vector<std::vector<Request>> periods;  // windows or slots
};

Workload make_workload(const WorkloadConfig& cfg, const ModelCatalog& catalog, Mode mode);

std::string workload_to_json(const Workload& w);
Workload workload_from_json(const std::string& text);

}  // namespace edgesim
