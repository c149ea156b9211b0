#include "edgesim/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "edgesim/error.hpp"
#include "edgesim/formulation.hpp"

namespace edgesim {

namespace {

constexpr int kRandomRetries = 100;

const char* kind_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::OfflineGreedy: return "greedy";
    case PolicyKind::OfflineRandom: return "random";
    case PolicyKind::OnlineLFU: return "lfu";
    case PolicyKind::OnlineLFUMAD: return "lfu-mad";
    case PolicyKind::OnlineRandom: return "random";
    case PolicyKind::CoCaR: return "cocar";
    case PolicyKind::CoCaROL: return "cocar-ol";
  }
  return "?";
}

// Index order by descending score, ties by ascending index.
std::vector<int> rank_desc(const std::vector<double>& score) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)]; });
  return order;
}

}  // namespace

bool PolicyId::offline() const {
  return kind == PolicyKind::OfflineGreedy || kind == PolicyKind::OfflineRandom || kind == PolicyKind::CoCaR;
}

std::string PolicyId::kind_name() const { return edgesim::kind_name(kind); }

std::string PolicyId::name() const {
  std::string n = kind_name();
  if (!offline() && !partitioned) n += "-nopart";
  return n;
}

PolicyId parse_policy(const std::string& text, bool offline_mode) {
  std::string base = text;
  bool partitioned = true;
  const std::string suffix = "-nopart";
  if (base.size() > suffix.size() && base.ends_with(suffix)) {
    base.resize(base.size() - suffix.size());
    partitioned = false;
  }
  PolicyId id;
  id.partitioned = partitioned;
  if (offline_mode) {
    if (base == "cocar") id.kind = PolicyKind::CoCaR;
    else if (base == "greedy") id.kind = PolicyKind::OfflineGreedy;
    else if (base == "random") id.kind = PolicyKind::OfflineRandom;
    else throw Error(ErrorCode::InvalidConfig, "unknown offline policy '" + text + "'");
    id.partitioned = true;
  } else {
    if (base == "cocar-ol") id.kind = PolicyKind::CoCaROL;
    else if (base == "lfu") id.kind = PolicyKind::OnlineLFU;
    else if (base == "lfu-mad") id.kind = PolicyKind::OnlineLFUMAD;
    else if (base == "random") id.kind = PolicyKind::OnlineRandom;
    else throw Error(ErrorCode::InvalidConfig, "unknown online policy '" + text + "'");
  }
  return id;
}

FeasiblePlan finalize_routes(const CacheState& cache, const std::vector<int>& route,
                             const Network& net, const ModelCatalog& catalog,
                             const std::vector<Request>& requests, const PrevCache& prev) {
  FeasiblePlan plan;
  plan.cache = cache;
  plan.route.assign(requests.size(), kCloud);
  plan.precision.assign(requests.size(), 0.0);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    const int n = route[r];
    if (n == kCloud) continue;
    const int l = cache.at(n, req.model);
    if (l == 0) continue;
    if (deadline_coefficient(req, n, l, net, catalog) > req.deadline_s) continue;
    if (load_coefficient(req, n, l, prev, catalog) > req.start_s) continue;
    plan.route[r] = n;
    plan.precision[r] = catalog.submodel({req.model, l}).precision;
  }
  return plan;
}

FeasiblePlan offline_greedy(const Network& net, const ModelCatalog& catalog,
                            const std::vector<Request>& requests, const PrevCache& prev) {
  const int N = net.size();
  const int M = catalog.size();
  std::vector<double> demand(static_cast<std::size_t>(M), 0.0);
  for (const Request& r : requests) demand[static_cast<std::size_t>(r.model)] += 1.0;
  const std::vector<int> order = rank_desc(demand);
  CacheState cache = CacheState::empty(N, M);
  for (int n = 0; n < N; ++n) {
    double left = net.memory_mb[static_cast<std::size_t>(n)];
    for (int m : order) {
      for (int l = catalog.model(m).top_level(); l >= 1; --l) {
        const double size = catalog.submodel({m, l}).size_mb;
        if (size <= left + 1e-9) {
          cache.set(n, m, l);
          left -= size;
          break;
        }
      }
    }
  }
  std::vector<int> route(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) route[r] = requests[r].home;
  return finalize_routes(cache, route, net, catalog, requests, prev);
}

FeasiblePlan offline_random(const Network& net, const ModelCatalog& catalog,
                            const std::vector<Request>& requests, const PrevCache& prev, Rng& rng) {
  const int N = net.size();
  const int M = catalog.size();
  CacheState cache = CacheState::empty(N, M);
  for (int n = 0; n < N; ++n) {
    const double cap = net.memory_mb[static_cast<std::size_t>(n)];
    bool fits = false;
    for (int attempt = 0; attempt < kRandomRetries && !fits; ++attempt) {
      for (int m = 0; m < M; ++m) {
        cache.set(n, m, static_cast<int>(rng.below(static_cast<std::uint64_t>(catalog.model(m).levels()))));
      }
      fits = cache.used_mb(n, catalog) <= cap;
    }
    // Fallback: shrink the largest cached submodel one step at a time.
    while (cache.used_mb(n, catalog) > cap) {
      int victim = -1;
      double biggest = -1.0;
      for (int m = 0; m < M; ++m) {
        const double s = catalog.submodel({m, cache.at(n, m)}).size_mb;
        if (s > biggest) {
          biggest = s;
          victim = m;
        }
      }
      cache.set(n, victim, cache.at(n, victim) - 1);
    }
  }
  std::vector<int> route(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    route[r] = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
  }
  return finalize_routes(cache, route, net, catalog, requests, prev);
}

SwitchAction LfuPolicy::action_for(const OnlineState& state, int bs, const FrequencyTracker& freq) const {
  const int M = state.model_count();
  const ModelCatalog& catalog = state.catalog();
  std::vector<int> area = state.network().neighbors(bs);
  area.push_back(bs);
  std::vector<double> score(static_cast<std::size_t>(M), 0.0);
  for (int m = 0; m < M; ++m) {
    for (int n : area) {
      score[static_cast<std::size_t>(m)] += decay_ == 1.0 ? freq.count(n, m) : freq.decayed(n, m, decay_);
    }
  }
  int pick = -1;
  for (int m = 0; m < M; ++m) {
    if (score[static_cast<std::size_t>(m)] <= 0.0 || state.downloading(bs, m)) continue;
    if (state.cached(bs, m) >= catalog.model(m).top_level()) continue;
    if (pick < 0 || score[static_cast<std::size_t>(m)] > score[static_cast<std::size_t>(pick)]) pick = m;
  }
  if (pick < 0) return {};

  SwitchAction a;
  a.bs = bs;
  a.model = pick;
  a.from = state.cached(bs, pick);
  a.to = a.from + 1;
  // Plan the shrinks on levels only; apply nothing unless the plan fits.
  std::vector<int> level(static_cast<std::size_t>(M));
  double footprint = 0.0;
  for (int m = 0; m < M; ++m) {
    level[static_cast<std::size_t>(m)] = m == pick ? a.to : state.target(bs, m);
    footprint += catalog.submodel({m, level[static_cast<std::size_t>(m)]}).size_mb;
  }
  const double cap = state.network().memory_mb[static_cast<std::size_t>(bs)];
  while (footprint > cap) {
    int victim = -1;
    for (int m = 0; m < M; ++m) {
      if (m == pick || state.downloading(bs, m) || level[static_cast<std::size_t>(m)] == 0) continue;
      // Least requested first; among equals the higher id goes first.
      if (victim < 0 || score[static_cast<std::size_t>(m)] <= score[static_cast<std::size_t>(victim)]) victim = m;
    }
    if (victim < 0) return {};
    const int l = level[static_cast<std::size_t>(victim)];
    footprint -= catalog.submodel({victim, l}).size_mb - catalog.submodel({victim, l - 1}).size_mb;
    level[static_cast<std::size_t>(victim)] = l - 1;
  }
  for (int m = 0; m < M; ++m) {
    if (m != pick && level[static_cast<std::size_t>(m)] != state.target(bs, m)) {
      a.companions.push_back({m, level[static_cast<std::size_t>(m)]});
    }
  }
  return a;
}

std::vector<SwitchAction> LfuPolicy::decide(OnlineState& state, const FrequencyTracker& freq, Rng& rng) {
  std::vector<SwitchAction> out;
  for (int i = 0; i < params_.rounds; ++i) {
    const int bs = static_cast<int>(rng.below(static_cast<std::uint64_t>(state.bs_count())));
    SwitchAction a = action_for(state, bs, freq);
    if (a.noop()) continue;
    apply_action(state, a);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<SwitchAction> RandomOnlinePolicy::decide(OnlineState& state, const FrequencyTracker&, Rng& rng) {
  std::vector<SwitchAction> out;
  const int M = state.model_count();
  const ModelCatalog& catalog = state.catalog();
  for (int i = 0; i < params_.rounds; ++i) {
    const int bs = static_cast<int>(rng.below(static_cast<std::uint64_t>(state.bs_count())));
    std::vector<int> candidates;
    for (int m = 0; m < M; ++m) {
      if (!state.downloading(bs, m) && state.cached(bs, m) < catalog.model(m).top_level()) candidates.push_back(m);
    }
    if (candidates.empty()) continue;
    const int pick = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    const int to = state.cached(bs, pick) + 1;
    double fixed = catalog.submodel({pick, to}).size_mb;
    std::vector<int> others;
    for (int m = 0; m < M; ++m) {
      if (m == pick) continue;
      if (state.downloading(bs, m) || state.cached(bs, m) == 0) {
        fixed += catalog.submodel({m, state.target(bs, m)}).size_mb;
      } else {
        others.push_back(m);
      }
    }
    const double cap = state.network().memory_mb[static_cast<std::size_t>(bs)];
    // All feasible companion level combinations, in odometer order.
    std::vector<std::vector<int>> feasible;
    std::vector<int> combo(others.size(), 0);
    while (true) {
      double used = fixed;
      for (std::size_t k = 0; k < others.size(); ++k) used += catalog.submodel({others[k], combo[k]}).size_mb;
      if (used <= cap) feasible.push_back(combo);
      std::size_t k = others.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++combo[k] <= state.cached(bs, others[k])) {
          done = false;
          break;
        }
        combo[k] = 0;
      }
      if (done) break;
    }
    if (feasible.empty()) continue;
    const auto& chosen = feasible[static_cast<std::size_t>(rng.below(feasible.size()))];
    SwitchAction a;
    a.bs = bs;
    a.model = pick;
    a.from = state.cached(bs, pick);
    a.to = to;
    for (std::size_t k = 0; k < others.size(); ++k) {
      if (chosen[k] != state.cached(bs, others[k])) a.companions.push_back({others[k], chosen[k]});
    }
    apply_action(state, a);
    out.push_back(std::move(a));
  }
  return out;
}

void warm_start(OnlineState& state, const std::vector<std::vector<double>>& popularity_per_bs) {
  const ModelCatalog& catalog = state.catalog();
  for (int n = 0; n < state.bs_count(); ++n) {
    const std::vector<int> order = rank_desc(popularity_per_bs[static_cast<std::size_t>(n)]);
    double left = state.network().memory_mb[static_cast<std::size_t>(n)] - state.footprint_mb(n);
    for (int m : order) {
      if (state.cached(n, m) != 0 || catalog.model(m).top_level() < 1) continue;
      const double size = catalog.submodel({m, 1}).size_mb;
      if (size > left + 1e-9) continue;
      state.set_cached(n, m, 1);
      left -= size;
    }
  }
}

}  // namespace edgesim
