#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgesim/error.hpp"
#include "edgesim/online.hpp"
#include "edgesim/rounding.hpp"
#include "edgesim/runner.hpp"

using namespace edgesim;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_offline() {
  return config_from_json(R"({"mode": "offline", "workload": {"users": 40, "windows": 2}, "seeds": [1, 2]})");
}

ExperimentConfig small_online() {
  return config_from_json(R"({"mode": "online", "workload": {"users": 60, "slots": 25}, "seeds": [3]})");
}

}  // namespace

TEST_CASE("config defaults and overrides") {
  const ExperimentConfig d = config_from_json("{}");
  CHECK(d.mode == Mode::Offline);
  CHECK(d.workload.bs_count == 5);
  CHECK(d.workload.users == 600);
  CHECK(d.workload.window_s == 3.0);
  CHECK(d.workload.windows == 10);
  CHECK(d.workload.wireless_mbps == 20.0);
  CHECK(d.workload.wired_mbps == 100.0);
  CHECK(d.workload.cloud_mbps == 800.0);
  CHECK(d.workload.per_hop_s == 0.01);
  CHECK(d.workload.memory_mb == 500.0);
  CHECK(d.workload.compute_gflops == 70.0);
  CHECK(d.workload.models == 8);
  CHECK(d.workload.zipf_skew == 0.8);
  CHECK(d.workload.data_mb == 0.144);
  CHECK(d.workload.deadline_s == 0.3);
  CHECK(d.workload.slot_s == 0.5);
  CHECK(d.workload.slots == 100);
  CHECK(d.workload.popularity_period_slots == 20);
  CHECK(d.workload.warmup_slots == 5);
  CHECK(d.rounds == 3);
  CHECK(d.history_slots == 10);
  CHECK(d.horizon_slots == 5);
  CHECK(d.qoe.alpha == 0.9);
  CHECK(d.qoe.gamma == 0.9);
  CHECK(d.auto_theta);

  const ExperimentConfig o = config_from_json(
      R"({"mode": "online", "workload": {"memory_mb": 300}, "qoe": {"theta": 0.1},
          "sweep": {"axis": "zipf_skew", "values": [0, 0.5, 1]}, "policies": ["lfu", "cocar-ol-nopart"]})");
  CHECK(o.mode == Mode::Online);
  CHECK(o.workload.memory_mb == 300.0);
  CHECK_FALSE(o.auto_theta);
  CHECK(o.qoe.theta == 0.1);
  const auto cells = expand_cells(o);
  CHECK(cells.size() == 6);
  CHECK(cells[0].relative_path() == "zipf_skew=0/lfu/1");
  CHECK(cells[5].relative_path() == "zipf_skew=1/cocar-ol-nopart/1");
  CHECK(config_to_json(config_from_json(config_to_json(o))) == config_to_json(o));
}

TEST_CASE("invalid configs are rejected") {
  for (const char* text : {R"({"bogus": 1})", R"({"workload": {"memory": 5}})", R"({"seeds": []})",
                           R"({"sweep": {"axis": "colour", "values": [1]}})", R"({"sweep": {"axis": "memory_mb", "values": []}})",
                           R"({"policies": ["lfu"]})", R"({"mode": "sideways"})", R"({"workload": {"users": -3}})",
                           R"({"qoe": {"gamma": 0}})", "not json"}) {
    INFO(text);
    try {
      config_from_json(text);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidConfig);
    }
  }
}

TEST_CASE("sweep values land on the right knob") {
  WorkloadConfig w;
  apply_sweep(w, Mode::Online, "popularity_period", 10);
  CHECK(w.popularity_period_slots == 10);
  apply_sweep(w, Mode::Offline, "popularity_period", 2);
  CHECK(w.popularity_period_windows == 2);
  apply_sweep(w, Mode::Online, "slots", 30);
  CHECK(w.slots == 30);
  apply_sweep(w, Mode::Offline, "memory_mb", 200);
  CHECK(w.memory_mb == 200);
}

TEST_CASE("offline runs are reproducible and score the deployed plan") {
  const ExperimentConfig cfg = small_offline();
  for (const Cell& cell : expand_cells(cfg)) {
    const auto a = run_cell(cfg, cell);
    CHECK(a.size() == 2);
    CHECK(to_csv(a) == to_csv(run_cell(cfg, cell)));
    for (const auto& r : a) {
      CHECK(r.avg_precision >= 0.0);
      CHECK(r.avg_precision <= 1.0);
      CHECK(r.memory_utilization <= 1.0 + 1e-9);
      CHECK(r.lp_bound.has_value() == (cell.policy.kind == PolicyKind::CoCaR));
    }
  }
}

TEST_CASE("a single window scores exactly the plan of that window") {
  ExperimentConfig cfg = config_from_json(R"({"workload": {"users": 30, "windows": 1}, "policies": ["cocar"]})");
  const Cell cell = expand_cells(cfg).front();
  const ModelCatalog cat = experiment_catalog(cfg);
  const Workload w = cell_workload(cfg, cell, cat);
  Rng rng = Rng::stream(cell.seed, Stream::Rounding, 0);
  CocarOptions opts;
  opts.formulation.seed = splitmix64(cell.seed);
  const CocarResult res =
      cocar_window(w.network, cat, CacheState::empty(w.network.size(), cat.size()), w.periods[0], opts, rng);
  const RunMetrics m = aggregate(run_cell(cfg, cell));
  CHECK(m.avg_inference_precision == doctest::Approx(res.plan.objective() / 30.0).epsilon(1e-8));
  CHECK(m.mean_objective == doctest::Approx(res.plan.objective()).epsilon(1e-8));
}

TEST_CASE("online runs emit one record per slot") {
  ExperimentConfig cfg = small_online();
  cfg.policies = {"cocar-ol", "lfu"};
  for (const Cell& cell : expand_cells(cfg)) {
    const auto recs = run_cell(cfg, cell);
    CHECK(recs.size() == 25);
    CHECK(to_csv(recs) == to_csv(run_cell(cfg, cell)));
  }
  cfg.workload.slots = 0;
  for (const Cell& cell : expand_cells(cfg)) {
    const auto recs = run_cell(cfg, cell);
    CHECK(recs.empty());
    CHECK_THROWS_AS(aggregate(recs), Error);
  }
}

TEST_CASE("zero rounds with a fixed demand freeze the metrics") {
  ExperimentConfig cfg = config_from_json(
      R"({"mode": "online", "workload": {"users": 40, "slots": 12, "popularity_period_slots": 0},
          "online": {"rounds": 0}, "policies": ["cocar-ol"]})");
  const auto recs = run_cell(cfg, expand_cells(cfg).front());
  for (const auto& r : recs) {
    CHECK(r.memory_utilization == recs.front().memory_utilization);
    CHECK(r.bytes_in_flight_mb == 0.0);
  }
}

TEST_CASE("experiments write per-cell files and subsets match the full grid") {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "edgesim_runner_test";
  fs::remove_all(root);
  ExperimentConfig cfg = small_offline();
  cfg.sweep_axis = "memory_mb";
  cfg.sweep_values = {200, 400};
  cfg.out_dir = (root / "full").string();
  const auto full = run_experiment(cfg, 2);
  REQUIRE(full.size() == 12);
  for (const auto& o : full) CHECK(o.ok);
  CHECK(fs::exists(root / "full" / "summary.csv"));
  const fs::path one = root / "full" / "memory_mb=400" / "greedy" / "2.csv";
  REQUIRE(fs::exists(one));
  CHECK(fs::exists(root / "full" / "memory_mb=400" / "greedy" / "2.json"));

  ExperimentConfig sub = cfg;
  sub.sweep_values = {400};
  sub.policies = {"greedy"};
  sub.seeds = {2};
  sub.out_dir = (root / "subset").string();
  const auto part = run_experiment(sub, 1);
  REQUIRE(part.size() == 1);
  CHECK(slurp(root / "subset" / "memory_mb=400" / "greedy" / "2.csv") == slurp(one));
  const RunMetrics reread = aggregate(from_csv(slurp(one)));
  for (const auto& o : full) {
    if (o.cell.relative_path() == "memory_mb=400/greedy/2") CHECK(*o.metrics == reread);
  }
  fs::remove_all(root);
}
