#include "edgesim/workload.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "edgesim/error.hpp"
#include "json_util.hpp"

namespace edgesim {

namespace {

constexpr int kTopologyAttempts = 10000;

void check(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidConfig, what);
}

std::vector<double> normalized(std::vector<double> p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
  return p;
}

std::uint64_t popularity_stream(int phase, int bs) {
  return (static_cast<std::uint64_t>(phase) << 20) ^ static_cast<std::uint64_t>(bs);
}

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::Offline ? "offline" : "online"; }

Mode mode_from_string(const std::string& s) {
  if (s == "offline") return Mode::Offline;
  if (s == "online") return Mode::Online;
  throw Error(ErrorCode::InvalidConfig, "unknown mode '" + s + "'");
}

void WorkloadConfig::validate() const {
  check(bs_count >= 1, "bs_count must be >= 1");
  check(users >= 0, "users must be >= 0");
  check(models >= 1, "models must be >= 1");
  check(zipf_skew >= 0.0, "zipf_skew must be >= 0");
  check(window_s > 0.0 && windows >= 0, "window settings invalid");
  check(slot_s > 0.0 && slots >= 0, "slot settings invalid");
  check(warmup_slots >= 0, "warmup_slots must be >= 0");
  check(popularity_period_slots <= 0 || warmup_slots < popularity_period_slots,
        "warm-up must be shorter than the popularity period");
  check(edge_probability > 0.0 && edge_probability <= 1.0, "edge_probability must be in (0,1]");
  check(memory_mb > 0 && compute_gflops > 0 && cloud_mbps > 0 && wireless_mbps > 0 &&
            wired_mbps > 0,
        "capacities must be positive");
  check(per_hop_s >= 0.0 && data_mb >= 0.0 && deadline_s > 0.0, "latency settings invalid");
}

const std::vector<double>& PopularitySchedule::at(int period, int bs) const {
  if (period < 0 || period >= periods()) {
    throw Error(ErrorCode::InvalidArgument, "schedule does not cover period " + std::to_string(period));
  }
  const auto& row = vectors[static_cast<std::size_t>(period)];
  return row[per_bs ? static_cast<std::size_t>(bs) : 0];
}

std::vector<double> zipf_weights(int count, double skew) {
  std::vector<double> w(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) w[static_cast<std::size_t>(i)] = std::pow(i + 1.0, -skew);
  return normalized(std::move(w));
}

std::vector<double> zipf_popularity(int count, double skew, Rng& rng) {
  const std::vector<double> ranked = zipf_weights(count, skew);
  std::vector<int> perm(static_cast<std::size_t>(count));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<double> p(static_cast<std::size_t>(count));
  for (std::size_t rank = 0; rank < perm.size(); ++rank) {
    p[static_cast<std::size_t>(perm[rank])] = ranked[rank];
  }
  return p;
}

std::vector<double> warmup_interpolate(const std::vector<double>& old_p,
                                       const std::vector<double>& new_p, int k, int total) {
  if (old_p.size() != new_p.size() || total <= 0 || k < 0 || k > total) {
    throw Error(ErrorCode::InvalidArgument, "warmup_interpolate arguments");
  }
  const double w = static_cast<double>(k) / static_cast<double>(total);
  std::vector<double> out(old_p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - w) * old_p[i] + w * new_p[i];
  return normalized(std::move(out));
}

std::vector<std::vector<int>> bfs_hops(const std::vector<std::vector<bool>>& adjacency) {
  const std::size_t n = adjacency.size();
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, kUnreached));
  for (std::size_t src = 0; src < n; ++src) {
    std::queue<std::size_t> q;
    hops[src][src] = 0;
    q.push(src);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (adjacency[u][v] && hops[src][v] == kUnreached) {
          hops[src][v] = hops[src][u] + 1;
          q.push(v);
        }
      }
    }
  }
  return hops;
}

Network gen_topology(const WorkloadConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.bs_count);
  Rng rng = Rng::stream(cfg.seed, Stream::Topology);
  std::vector<std::vector<int>> hops;
  bool connected = false;
  for (int attempt = 0; attempt < kTopologyAttempts && !connected; ++attempt) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool edge = rng.bernoulli(cfg.edge_probability);
        adj[i][j] = adj[j][i] = edge;
      }
    }
    hops = bfs_hops(adj);
    connected = true;
    for (const auto& row : hops) {
      for (int h : row) connected = connected && h != std::numeric_limits<int>::max();
    }
  }
  if (!connected) {
    throw Error(ErrorCode::TopologyGenerationFailed,
                "no connected graph after " + std::to_string(kTopologyAttempts) + " attempts");
  }
  Network net;
  net.memory_mb.assign(n, cfg.memory_mb);
  net.compute_gflops.assign(n, cfg.compute_gflops);
  net.cloud_mbps.assign(n, cfg.cloud_mbps);
  net.wireless_mbps.assign(n, cfg.wireless_mbps);
  net.wired_mbps.assign(n, std::vector<double>(n, cfg.wired_mbps));
  net.hops = std::move(hops);
  net.per_hop_s = cfg.per_hop_s;
  net.validate();
  return net;
}

PopularitySchedule offline_schedule(const WorkloadConfig& cfg) {
  PopularitySchedule s;
  s.per_bs = false;
  std::vector<double> current;
  int phase = -1;
  for (int w = 0; w < cfg.windows; ++w) {
    const int want = cfg.popularity_period_windows > 0 ? w / cfg.popularity_period_windows : 0;
    if (want != phase) {
      phase = want;
      Rng rng = Rng::stream(cfg.seed, Stream::Popularity, popularity_stream(phase, 0));
      current = zipf_popularity(cfg.models, cfg.zipf_skew, rng);
    }
    s.vectors.push_back({current});
  }
  return s;
}

PopularitySchedule online_schedule(const WorkloadConfig& cfg) {
  PopularitySchedule s;
  s.per_bs = true;
  const int period = cfg.popularity_period_slots;
  auto phase_vector = [&](int phase, int bs) {
    Rng rng = Rng::stream(cfg.seed, Stream::Popularity, popularity_stream(phase, bs + 1));
    return zipf_popularity(cfg.models, cfg.zipf_skew, rng);
  };
  for (int t = 0; t < cfg.slots; ++t) {
    const int phase = period > 0 ? t / period : 0;
    std::vector<std::vector<double>> per_bs;
    for (int b = 0; b < cfg.bs_count; ++b) {
      std::vector<double> p = phase_vector(phase, b);
      if (period > 0 && cfg.warmup_slots > 0) {
        const int change_at = (phase + 1) * period;
        const int warm_start = change_at - cfg.warmup_slots;
        if (t >= warm_start) {
          const int j = t - warm_start;
          p = warmup_interpolate(p, phase_vector(phase + 1, b), j + 1, cfg.warmup_slots + 1);
        }
      }
      per_bs.push_back(std::move(p));
    }
    s.vectors.push_back(std::move(per_bs));
  }
  return s;
}

std::vector<Request> gen_requests(const WorkloadConfig& cfg, const PopularitySchedule& schedule,
                                  int period, Mode mode) {
  std::vector<Request> out;
  out.reserve(static_cast<std::size_t>(cfg.users));
  if (cfg.users == 0) return out;
  Rng rng = Rng::stream(cfg.seed, Stream::Requests, static_cast<std::uint64_t>(period));
  for (int u = 0; u < cfg.users; ++u) {
    Request r;
    r.user = u;
    r.home = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.bs_count)));
    r.model = static_cast<int>(rng.categorical(schedule.at(period, r.home)));
    r.data_mb = cfg.data_mb;
    r.deadline_s = cfg.deadline_s;
    r.start_s = mode == Mode::Offline ? rng.uniform(0.0, cfg.window_s) : 0.0;
    out.push_back(r);
  }
  return out;
}

Workload make_workload(const WorkloadConfig& cfg, const ModelCatalog& catalog, Mode mode) {
  cfg.validate();
  if (catalog.size() != cfg.models) {
    throw Error(ErrorCode::InvalidConfig, "catalog has " + std::to_string(catalog.size()) +
                                              " models, config asks for " + std::to_string(cfg.models));
  }
  Workload w;
  w.mode = mode;
  w.config = cfg;
  w.network = gen_topology(cfg);
  w.catalog = catalog;
  w.schedule = mode == Mode::Offline ? offline_schedule(cfg) : online_schedule(cfg);
  const int count = mode == Mode::Offline ? cfg.windows : cfg.slots;
  for (int p = 0; p < count; ++p) w.periods.push_back(gen_requests(cfg, w.schedule, p, mode));
  return w;
}

namespace detail {

json network_json(const Network& net) {
  return json{{"memory_mb", net.memory_mb},         {"compute_gflops", net.compute_gflops},
              {"cloud_mbps", net.cloud_mbps},       {"wireless_mbps", net.wireless_mbps},
              {"wired_mbps", net.wired_mbps},       {"hops", net.hops},
              {"per_hop_s", net.per_hop_s}};
}

Network network_from(const json& j) {
  Network net;
  net.memory_mb = j.at("memory_mb").get<std::vector<double>>();
  net.compute_gflops = j.at("compute_gflops").get<std::vector<double>>();
  net.cloud_mbps = j.at("cloud_mbps").get<std::vector<double>>();
  net.wireless_mbps = j.at("wireless_mbps").get<std::vector<double>>();
  net.wired_mbps = j.at("wired_mbps").get<std::vector<std::vector<double>>>();
  net.hops = j.at("hops").get<std::vector<std::vector<int>>>();
  net.per_hop_s = j.at("per_hop_s").get<double>();
  net.validate();
  return net;
}

json request_json(const Request& r) {
  return json::array({r.user, r.model, r.home, r.data_mb, r.deadline_s, r.start_s});
}

Request request_from(const json& j) {
  Request r;
  r.user = j.at(0).get<int>();
  r.model = j.at(1).get<int>();
  r.home = j.at(2).get<int>();
  r.data_mb = j.at(3).get<double>();
  r.deadline_s = j.at(4).get<double>();
  r.start_s = j.at(5).get<double>();
  return r;
}

json config_json(const WorkloadConfig& c) {
  return json{{"seed", c.seed},
                      {"bs_count", c.bs_count},
                      {"users", c.users},
                      {"models", c.models},
                      {"zipf_skew", c.zipf_skew},
                      {"window_s", c.window_s},
                      {"windows", c.windows},
                      {"popularity_period_windows", c.popularity_period_windows},
                      {"slot_s", c.slot_s},
                      {"slots", c.slots},
                      {"popularity_period_slots", c.popularity_period_slots},
                      {"warmup_slots", c.warmup_slots},
                      {"edge_probability", c.edge_probability},
                      {"coverage_m", c.coverage_m},
                      {"memory_mb", c.memory_mb},
                      {"compute_gflops", c.compute_gflops},
                      {"cloud_mbps", c.cloud_mbps},
                      {"wireless_mbps", c.wireless_mbps},
                      {"wired_mbps", c.wired_mbps},
                      {"per_hop_s", c.per_hop_s},
                      {"data_mb", c.data_mb},
                      {"deadline_s", c.deadline_s}};
}

WorkloadConfig config_from(const json& j) {
  WorkloadConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.bs_count = j.at("bs_count").get<int>();
  c.users = j.at("users").get<int>();
  c.models = j.at("models").get<int>();
  c.zipf_skew = j.at("zipf_skew").get<double>();
  c.window_s = j.at("window_s").get<double>();
  c.windows = j.at("windows").get<int>();
  c.popularity_period_windows = j.at("popularity_period_windows").get<int>();
  c.slot_s = j.at("slot_s").get<double>();
  c.slots = j.at("slots").get<int>();
  c.popularity_period_slots = j.at("popularity_period_slots").get<int>();
  c.warmup_slots = j.at("warmup_slots").get<int>();
  c.edge_probability = j.at("edge_probability").get<double>();
  c.coverage_m = j.at("coverage_m").get<double>();
  c.memory_mb = j.at("memory_mb").get<double>();
  c.compute_gflops = j.at("compute_gflops").get<double>();
  c.cloud_mbps = j.at("cloud_mbps").get<double>();
  c.wireless_mbps = j.at("wireless_mbps").get<double>();
  c.wired_mbps = j.at("wired_mbps").get<double>();
  c.per_hop_s = j.at("per_hop_s").get<double>();
  c.data_mb = j.at("data_mb").get<double>();
  c.deadline_s = j.at("deadline_s").get<double>();
  return c;
}

}  // namespace detail

std::string workload_to_json(const Workload& w) {
  detail::json periods = detail::json::array();
  for (const auto& reqs : w.periods) {
    detail::json arr = detail::json::array();
    for (const auto& r : reqs) arr.push_back(detail::request_json(r));
    periods.push_back(std::move(arr));
  }
  detail::json j{{"format", "edgesim-workload"},
                 {"version", 1},
                 {"mode", to_string(w.mode)},
                 {"config", detail::config_json(w.config)},
                 {"network", detail::network_json(w.network)},
                 {"catalog", detail::catalog_json(w.catalog)},
                 {"popularity", {{"per_bs", w.schedule.per_bs}, {"vectors", w.schedule.vectors}}},
                 {"periods", periods}};
  return j.dump() + "\n";
}

Workload workload_from_json(const std::string& text) {
  try {
    const auto j = detail::json::parse(text);
    if (j.at("format").get<std::string>() != "edgesim-workload") {
      throw Error(ErrorCode::InvalidConfig, "not a workload dump");
    }
    Workload w;
    w.mode = mode_from_string(j.at("mode").get<std::string>());
    w.config = detail::config_from(j.at("config"));
    w.network = detail::network_from(j.at("network"));
    w.catalog = detail::catalog_from(j.at("catalog"));
    w.schedule.per_bs = j.at("popularity").at("per_bs").get<bool>();
    w.schedule.vectors =
        j.at("popularity").at("vectors").get<std::vector<std::vector<std::vector<double>>>>();
    for (const auto& jp : j.at("periods")) {
      std::vector<Request> reqs;
      for (const auto& jr : jp) reqs.push_back(detail::request_from(jr));
      w.periods.push_back(std::move(reqs));
    }
    return w;
  } catch (const detail::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("workload dump: ") + e.what());
  }
}

}  // namespace edgesim
