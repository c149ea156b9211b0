#include "edgesim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "edgesim/error.hpp"
#include "edgesim/online.hpp"
#include "edgesim/rounding.hpp"
#include "json_util.hpp"

namespace edgesim {

const std::vector<std::string> kSweepAxes{"memory_mb", "zipf_skew", "popularity_period",
                                          "window_s",  "slots",     "users"};

namespace {

using detail::json;

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + it.key() + "' in " + where);
    }
  }
}

void config_fail(bool bad, const std::string& what) {
  if (bad) throw Error(ErrorCode::InvalidConfig, what);
}

OnlineParams online_params(const ExperimentConfig& cfg, const Workload& w) {
  OnlineParams p;
  p.qoe = cfg.qoe;
  if (cfg.auto_theta) p.qoe.theta = min_latency(w.network, w.catalog, w.config.data_mb);
  p.slot_s = w.config.slot_s;
  p.rounds = cfg.rounds;
  p.history_slots = cfg.history_slots;
  p.horizon_slots = cfg.horizon_slots;
  p.users = w.config.users;
  p.data_mb = w.config.data_mb;
  p.deadline_s = w.config.deadline_s;
  p.mad_decay = cfg.mad_decay;
  p.enumeration_limit = cfg.enumeration_limit;
  return p;
}

double mean_utilization(const CacheState& cache, const Network& net, const ModelCatalog& catalog) {
  double sum = 0.0;
  for (int n = 0; n < cache.bs_count; ++n) {
    const double cap = net.memory_mb[static_cast<std::size_t>(n)];
    sum += cap > 0.0 ? cache.used_mb(n, catalog) / cap : 0.0;
  }
  return cache.bs_count > 0 ? sum / cache.bs_count : 0.0;
}

std::vector<PeriodRecord> run_offline(const ExperimentConfig& cfg, const Workload& w,
                                      const PolicyId& policy, const std::string& run_id,
                                      std::uint64_t seed) {
  const OnlineParams params = online_params(cfg, w);
  const int N = w.network.size();
  PrevCache prev = CacheState::empty(N, w.catalog.size());
  std::vector<PeriodRecord> out;
  for (int t = 0; t < static_cast<int>(w.periods.size()); ++t) {
    const auto& reqs = w.periods[static_cast<std::size_t>(t)];
    FeasiblePlan plan;
    std::optional<double> bound;
    switch (policy.kind) {
      case PolicyKind::CoCaR: {
        CocarOptions opts;
        opts.repeats = cfg.repeats;
        opts.formulation.presolve = cfg.presolve;
        opts.formulation.variable_cap = cfg.variable_cap;
        opts.formulation.seed = splitmix64(seed) + static_cast<std::uint64_t>(t);
        Rng rng = Rng::stream(seed, Stream::Rounding, static_cast<std::uint64_t>(t));
        CocarResult res;
        try {
          res = cocar_window(w.network, w.catalog, prev, reqs, opts, rng);
        } catch (const Error& e) {
          throw Error(e.code(), "window " + std::to_string(t) + ": " + e.what());
        }
        bound = res.fractional.objective;
        plan = std::move(res.plan);
        break;
      }
      case PolicyKind::OfflineGreedy:
        plan = offline_greedy(w.network, w.catalog, reqs, prev);
        break;
      case PolicyKind::OfflineRandom: {
        Rng rng = Rng::stream(seed, Stream::Policy, static_cast<std::uint64_t>(t));
        plan = offline_random(w.network, w.catalog, reqs, prev, rng);
        break;
      }
      default:
        throw Error(ErrorCode::InvalidConfig, policy.name() + " is not an offline policy");
    }

    PeriodRecord rec;
    rec.run_id = run_id;
    rec.seed = seed;
    rec.policy = policy.name();
    rec.partitioned = policy.partitioned;
    rec.period = t;
    rec.requests = static_cast<std::int64_t>(reqs.size());
    double psum = 0.0, qsum = 0.0;
    for (std::size_t r = 0; r < reqs.size(); ++r) {
      if (plan.route[r] == kCloud) continue;
      ++rec.hits;
      const double p = plan.precision[r];
      double latency = 0.0;
      served_latency(reqs[r], plan.route[r], plan.cache, w.network, w.catalog, &latency);
      psum += p;
      qsum += qoe(p, latency, params.qoe);
    }
    if (!reqs.empty()) {
      rec.avg_precision = psum / static_cast<double>(reqs.size());
      rec.avg_qoe = qsum / static_cast<double>(reqs.size());
    }
    rec.memory_utilization = mean_utilization(plan.cache, w.network, w.catalog);
    rec.objective = plan.objective();
    rec.lp_bound = bound;
    rec.quantize();
    out.push_back(std::move(rec));
    prev = plan.cache;
  }
  return out;
}

std::vector<PeriodRecord> run_online(const ExperimentConfig& cfg, const Workload& w,
                                     const PolicyId& policy, const std::string& run_id,
                                     std::uint64_t seed, std::ostream* log) {
  if (w.periods.empty()) return {};
  const OnlineParams params = online_params(cfg, w);
  const ModelCatalog catalog = policy.partitioned ? w.catalog : w.catalog.unpartitioned();
  const int N = w.network.size();
  OnlineState state(w.network, catalog);
  std::vector<std::vector<double>> popularity;
  for (int n = 0; n < N; ++n) popularity.push_back(w.schedule.at(0, n));
  warm_start(state, popularity);
  FrequencyTracker freq(N, catalog.size(), params.history_slots, params.users);

  std::unique_ptr<OnlinePolicy> decider;
  switch (policy.kind) {
    case PolicyKind::CoCaROL: decider = std::make_unique<CocarOlPolicy>(params); break;
    case PolicyKind::OnlineLFU: decider = std::make_unique<LfuPolicy>(params, 1.0); break;
    case PolicyKind::OnlineLFUMAD: decider = std::make_unique<LfuPolicy>(params, params.mad_decay); break;
    case PolicyKind::OnlineRandom: decider = std::make_unique<RandomOnlinePolicy>(params); break;
    default: throw Error(ErrorCode::InvalidConfig, policy.name() + " is not an online policy");
  }
  Rng rng = Rng::stream(seed, Stream::Policy);

  std::vector<PeriodRecord> out;
  for (int t = 0; t < static_cast<int>(w.periods.size()); ++t) {
    const auto& reqs = w.periods[static_cast<std::size_t>(t)];
    SlotOutcome slot = online_step(state, freq, reqs, *decider, params, rng);
    if (log) write_decision_log(*log, t, slot.actions);

    PeriodRecord rec;
    rec.run_id = run_id;
    rec.seed = seed;
    rec.policy = policy.name();
    rec.partitioned = policy.partitioned;
    rec.period = t;
    rec.requests = static_cast<std::int64_t>(reqs.size());
    double psum = 0.0, qsum = 0.0;
    for (const RouteResult& r : slot.routes) {
      if (r.target == kCloud) continue;
      ++rec.hits;
      psum += r.precision;
      qsum += r.qoe;
    }
    if (!reqs.empty()) {
      rec.avg_precision = psum / static_cast<double>(reqs.size());
      rec.avg_qoe = qsum / static_cast<double>(reqs.size());
    }
    rec.memory_utilization = mean_utilization(state.cache(), w.network, catalog);
    for (int n = 0; n < N; ++n) rec.bytes_in_flight_mb += state.bytes_in_flight(n);
    rec.objective = psum;
    rec.quantize();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    workload.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  config_fail(seeds.empty(), "seeds must not be empty");
  config_fail(qoe.alpha < 0.0, "qoe.alpha must be non-negative");
  config_fail(!(qoe.gamma > 0.0 && qoe.gamma <= 1.0), "qoe.gamma must be in (0, 1]");
  config_fail(rounds < 0, "online.rounds must be non-negative");
  config_fail(history_slots < 1, "online.history_slots must be at least 1");
  config_fail(horizon_slots < 1, "online.horizon_slots must be at least 1");
  config_fail(!(mad_decay > 0.0 && mad_decay <= 1.0), "online.mad_decay must be in (0, 1]");
  config_fail(enumeration_limit < 1, "online.enumeration_limit must be positive");
  config_fail(repeats < 1, "cocar.repeats must be at least 1");
  config_fail(variable_cap < 1, "cocar.variable_cap must be positive");
  for (const std::string& p : policies) {
    PolicyId id;
    try {
      id = parse_policy(p, mode == Mode::Offline);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
    config_fail(id.offline() && p.ends_with("-nopart"),
                "offline policies always use the partitioned catalog: " + p);
  }
  if (!sweep_axis.empty()) {
    config_fail(std::find(kSweepAxes.begin(), kSweepAxes.end(), sweep_axis) == kSweepAxes.end(),
                "unknown sweep axis '" + sweep_axis + "'");
    config_fail(sweep_values.empty(), "sweep needs at least one value");
    for (double v : sweep_values) {
      WorkloadConfig probe = workload;
      apply_sweep(probe, mode, sweep_axis, v);
      try {
        probe.validate();
      } catch (const Error& e) {
        throw Error(ErrorCode::InvalidConfig, sweep_axis + "=" + fmt_g(v) + ": " + e.what());
      }
    }
  } else {
    config_fail(!sweep_values.empty(), "sweep values given without an axis");
  }
}

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(text);
    check_keys(j, {"mode", "workload", "catalog", "qoe", "online", "cocar", "seeds", "policies", "sweep",
                   "out", "decision_log"},
               "config");
    if (j.contains("mode")) cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("workload")) {
      const json& wj = j.at("workload");
      json merged = detail::config_json(cfg.workload);
      std::set<std::string> keys;
      for (auto it = merged.begin(); it != merged.end(); ++it) keys.insert(it.key());
      check_keys(wj, keys, "workload");
      for (auto it = wj.begin(); it != wj.end(); ++it) merged[it.key()] = it.value();
      cfg.workload = detail::config_from(merged);
    }
    cfg.catalog_path = detail::get_or<std::string>(j, "catalog", "");
    if (j.contains("qoe")) {
      const json& q = j.at("qoe");
      check_keys(q, {"theta", "alpha", "gamma"}, "qoe");
      if (q.contains("theta") && q.at("theta").is_number()) {
        cfg.qoe.theta = q.at("theta").get<double>();
        cfg.auto_theta = false;
      } else if (q.contains("theta") && !q.at("theta").is_null() && q.at("theta") != "auto") {
        throw Error(ErrorCode::InvalidConfig, "qoe.theta must be a number, null or \"auto\"");
      }
      cfg.qoe.alpha = detail::get_or(q, "alpha", cfg.qoe.alpha);
      cfg.qoe.gamma = detail::get_or(q, "gamma", cfg.qoe.gamma);
    }
    if (j.contains("online")) {
      const json& o = j.at("online");
      check_keys(o, {"rounds", "history_slots", "horizon_slots", "mad_decay", "enumeration_limit"}, "online");
      cfg.rounds = detail::get_or(o, "rounds", cfg.rounds);
      cfg.history_slots = detail::get_or(o, "history_slots", cfg.history_slots);
      cfg.horizon_slots = detail::get_or(o, "horizon_slots", cfg.horizon_slots);
      cfg.mad_decay = detail::get_or(o, "mad_decay", cfg.mad_decay);
      cfg.enumeration_limit = detail::get_or(o, "enumeration_limit", cfg.enumeration_limit);
    }
    if (j.contains("cocar")) {
      const json& c = j.at("cocar");
      check_keys(c, {"repeats", "presolve", "variable_cap"}, "cocar");
      cfg.repeats = detail::get_or(c, "repeats", cfg.repeats);
      cfg.presolve = detail::get_or(c, "presolve", cfg.presolve);
      cfg.variable_cap = detail::get_or(c, "variable_cap", cfg.variable_cap);
    }
    if (j.contains("seeds")) {
      cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    } else {
      cfg.seeds = {cfg.workload.seed};
    }
    if (j.contains("policies")) cfg.policies = j.at("policies").get<std::vector<std::string>>();
    if (j.contains("sweep") && !j.at("sweep").is_null()) {
      const json& s = j.at("sweep");
      check_keys(s, {"axis", "values"}, "sweep");
      cfg.sweep_axis = s.at("axis").get<std::string>();
      cfg.sweep_values = s.at("values").get<std::vector<double>>();
    }
    cfg.out_dir = detail::get_or<std::string>(j, "out", cfg.out_dir);
    cfg.decision_log = detail::get_or(j, "decision_log", cfg.decision_log);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return config_from_json(detail::read_file(path)); }

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["mode"] = to_string(cfg.mode);
  j["workload"] = detail::config_json(cfg.workload);
  if (!cfg.catalog_path.empty()) j["catalog"] = cfg.catalog_path;
  j["qoe"] = json{{"theta", cfg.auto_theta ? json("auto") : json(cfg.qoe.theta)},
                  {"alpha", cfg.qoe.alpha},
                  {"gamma", cfg.qoe.gamma}};
  j["online"] = json{{"rounds", cfg.rounds},
                     {"history_slots", cfg.history_slots},
                     {"horizon_slots", cfg.horizon_slots},
                     {"mad_decay", cfg.mad_decay},
                     {"enumeration_limit", cfg.enumeration_limit}};
  j["cocar"] = json{{"repeats", cfg.repeats}, {"presolve", cfg.presolve}, {"variable_cap", cfg.variable_cap}};
  j["seeds"] = cfg.seeds;
  j["policies"] = cfg.policies.empty() ? default_policies(cfg.mode) : cfg.policies;
  if (!cfg.sweep_axis.empty()) j["sweep"] = json{{"axis", cfg.sweep_axis}, {"values", cfg.sweep_values}};
  j["out"] = cfg.out_dir;
  j["decision_log"] = cfg.decision_log;
  return j.dump(2) + "\n";
}

void apply_sweep(WorkloadConfig& w, Mode mode, const std::string& axis, double value) {
  const int as_int = static_cast<int>(std::lround(value));
  if (axis == "memory_mb") {
    w.memory_mb = value;
  } else if (axis == "zipf_skew") {
    w.zipf_skew = value;
  } else if (axis == "popularity_period") {
    (mode == Mode::Offline ? w.popularity_period_windows : w.popularity_period_slots) = as_int;
  } else if (axis == "window_s") {
    w.window_s = value;
  } else if (axis == "slots") {
    (mode == Mode::Offline ? w.windows : w.slots) = as_int;
  } else if (axis == "users") {
    w.users = as_int;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown sweep axis '" + axis + "'");
  }
}

std::vector<std::string> default_policies(Mode mode) {
  if (mode == Mode::Offline) return {"cocar", "greedy", "random"};
  return {"cocar-ol", "lfu", "lfu-mad", "random", "cocar-ol-nopart", "lfu-nopart", "lfu-mad-nopart",
          "random-nopart"};
}

std::string Cell::run_id() const { return relative_path(); }

std::string Cell::relative_path() const {
  return sweep_label + "/" + policy.name() + "/" + std::to_string(seed);
}

std::vector<Cell> expand_cells(const ExperimentConfig& cfg) {
  const auto names = cfg.policies.empty() ? default_policies(cfg.mode) : cfg.policies;
  std::vector<std::optional<double>> values;
  if (cfg.sweep_axis.empty()) {
    values.push_back(std::nullopt);
  } else {
    for (double v : cfg.sweep_values) values.push_back(v);
  }
  std::vector<Cell> cells;
  for (const auto& v : values) {
    for (const std::string& name : names) {
      for (std::uint64_t seed : cfg.seeds) {
        Cell c;
        c.sweep_value = v;
        c.sweep_label = v ? cfg.sweep_axis + "=" + fmt_g(*v) : "default";
        c.policy = parse_policy(name, cfg.mode == Mode::Offline);
        c.seed = seed;
        cells.push_back(std::move(c));
      }
    }
  }
  return cells;
}

ModelCatalog experiment_catalog(const ExperimentConfig& cfg) {
  if (!cfg.catalog_path.empty()) return load_catalog(cfg.catalog_path);
  return default_catalog(cfg.workload.models);
}

Workload cell_workload(const ExperimentConfig& cfg, const Cell& cell, const ModelCatalog& catalog) {
  WorkloadConfig w = cfg.workload;
  w.seed = cell.seed;
  if (cell.sweep_value) apply_sweep(w, cfg.mode, cfg.sweep_axis, *cell.sweep_value);
  return make_workload(w, catalog, cfg.mode);
}

std::vector<PeriodRecord> run_policy(const ExperimentConfig& cfg, const Workload& workload,
                                     const PolicyId& policy, const std::string& run_id,
                                     std::uint64_t seed, std::ostream* decision_log) {
  if (workload.mode == Mode::Offline) return run_offline(cfg, workload, policy, run_id, seed);
  return run_online(cfg, workload, policy, run_id, seed, decision_log);
}

std::vector<PeriodRecord> run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  const ModelCatalog catalog = experiment_catalog(cfg);
  const Workload w = cell_workload(cfg, cell, catalog);
  return run_policy(cfg, w, cell.policy, cell.run_id(), cell.seed);
}

std::vector<CellOutcome> run_experiment(const ExperimentConfig& cfg, int jobs) {
  namespace fs = std::filesystem;
  cfg.validate();
  const std::vector<Cell> cells = expand_cells(cfg);
  const ModelCatalog catalog = experiment_catalog(cfg);
  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      CellOutcome& o = outcomes[i];
      o.cell = cells[i];
      try {
        const fs::path base = fs::path(cfg.out_dir) / o.cell.relative_path();
        fs::create_directories(base.parent_path());
        const Workload w = cell_workload(cfg, o.cell, catalog);
        std::ofstream log;
        if (cfg.decision_log && cfg.mode == Mode::Online) {
          log.open(base.string() + ".decisions.jsonl");
        }
        const auto records =
            run_policy(cfg, w, o.cell.policy, o.cell.run_id(), o.cell.seed, log.is_open() ? &log : nullptr);
        detail::write_file(base.string() + ".csv", to_csv(records));
        o.metrics = aggregate(records);
        detail::write_file(base.string() + ".json", metrics_json(*o.metrics));
        o.ok = true;
      } catch (const std::exception& e) {
        o.error = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string summary =
      "sweep,policy,seed,status,periods,requests,avg_inference_precision,avg_qoe,hit_rate,"
      "memory_utilization,mean_objective,mean_lp_bound\n";
  for (const CellOutcome& o : outcomes) {
    summary += o.cell.sweep_label + ',' + o.cell.policy.name() + ',' + std::to_string(o.cell.seed) + ',';
    if (!o.ok) {
      summary += "failed,,,,,,,,\n";
      continue;
    }
    const RunMetrics& m = *o.metrics;
    char buf[256];
    std::snprintf(buf, sizeof buf, "ok,%d,%lld,%.9g,%.9g,%.9g,%.9g,%.9g,", m.periods,
                  static_cast<long long>(m.requests), m.avg_inference_precision, m.avg_qoe, m.hit_rate,
                  m.memory_utilization, m.mean_objective);
    summary += buf;
    if (m.mean_lp_bound) {
      std::snprintf(buf, sizeof buf, "%.9g", *m.mean_lp_bound);
      summary += buf;
    }
    summary += '\n';
  }
  fs::create_directories(cfg.out_dir);
  detail::write_file((fs::path(cfg.out_dir) / "summary.csv").string(), summary);
  return outcomes;
}

}  // namespace edgesim
