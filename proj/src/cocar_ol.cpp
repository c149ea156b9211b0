#include "edgesim/cocar_ol.hpp"

#include <algorithm>
#include <cmath>

#include "edgesim/error.hpp"
#include "edgesim/knapsack.hpp"
#include "json_util.hpp"

namespace edgesim {

FrequencyTracker::FrequencyTracker(int bs_count, int model_count, int window_slots, int users)
    : bs_count_(bs_count), model_count_(model_count), window_(std::max(1, window_slots)), users_(users) {}

void FrequencyTracker::update(const std::vector<Request>& slot_requests) {
  std::vector<int> counts(static_cast<std::size_t>(bs_count_ * model_count_), 0);
  for (const Request& r : slot_requests) {
    if (r.home < 0 || r.home >= bs_count_ || r.model < 0 || r.model >= model_count_) {
      throw Error(ErrorCode::InvalidArgument, "request outside the tracked BS/model range");
    }
    ++counts[static_cast<std::size_t>(r.home * model_count_ + r.model)];
  }
  history_.push_back(std::move(counts));
  while (static_cast<int>(history_.size()) > window_) history_.pop_front();
}

double FrequencyTracker::count(int bs, int model) const {
  double c = 0.0;
  for (const auto& slot : history_) c += slot[static_cast<std::size_t>(bs * model_count_ + model)];
  return c;
}

double FrequencyTracker::f(int bs, int model) const {
  if (history_.empty() || users_ <= 0) return 0.0;
  return count(bs, model) / (static_cast<double>(history_.size()) * users_);
}

double FrequencyTracker::decayed(int bs, int model, double decay) const {
  double c = 0.0, w = 1.0;
  for (auto it = history_.rbegin(); it != history_.rend(); ++it) {
    c += w * (*it)[static_cast<std::size_t>(bs * model_count_ + model)];
    w *= decay;
  }
  return c;
}

std::string SwitchAction::to_json() const {
  detail::json comp = detail::json::array();
  for (const auto& [m, l] : companions) comp.push_back({{"model", m}, {"to", l}});
  return detail::json{{"bs", bs}, {"model", model}, {"from", from}, {"to", to},
                      {"companions", comp}, {"gain", gain}}
      .dump();
}

std::vector<int> enlargement_targets(const OnlineState& state, int bs, int model, double slot_s) {
  std::vector<int> out;
  const ModelType& mt = state.catalog().model(model);
  const double budget = state.link_rate(bs) * slot_s;
  double bytes = 0.0;
  for (int l = state.target(bs, model) + 1; l <= mt.top_level(); ++l) {
    bytes += mt.submodels[static_cast<std::size_t>(l)].delta_mb;
    out.push_back(l);
    if (bytes > budget) break;
  }
  return out;
}

double future_reward(const OnlineState& state, int bs, int model, int level,
                     const FrequencyTracker& freq, const OnlineParams& params) {
  OnlineState sim = state;
  const int current = sim.target(bs, model);
  if (level > current) {
    sim.enqueue_upgrade(bs, model, level);
  } else if (level < current) {
    sim.shrink(bs, model, level);
  }
  const int N = sim.bs_count();
  std::vector<double> demand(static_cast<std::size_t>(N));
  bool any = false;
  for (int n = 0; n < N; ++n) {
    demand[static_cast<std::size_t>(n)] = freq.f(n, model) * params.users;
    any = any || demand[static_cast<std::size_t>(n)] > 0.0;
  }
  if (!any) return 0.0;
  double reward = 0.0, discount = 1.0;
  for (int k = 1; k <= params.horizon_slots; ++k) {
    settle_cache(sim, advance_downloads(sim, params.slot_s, bs));
    discount *= params.qoe.gamma;
    for (int n = 0; n < N; ++n) {
      const double d = demand[static_cast<std::size_t>(n)];
      if (d <= 0.0) continue;
      Request probe;
      probe.model = model;
      probe.home = n;
      probe.data_mb = params.data_mb;
      probe.deadline_s = params.deadline_s;
      const RouteResult r = route_best(probe, sim.cache(), sim.network(), sim.catalog(), params.qoe);
      reward += discount * d * r.qoe;
    }
  }
  return reward;
}

double future_gain(const OnlineState& state, int bs, int model, int level,
                   const FrequencyTracker& freq, const OnlineParams& params) {
  const int current = state.target(bs, model);
  return future_reward(state, bs, model, level, freq, params) -
         future_reward(state, bs, model, current, freq, params);
}

SwitchAction choose_switch(const OnlineState& state, int bs, const FrequencyTracker& freq,
                           const OnlineParams& params) {
  const int M = state.model_count();
  const ModelCatalog& catalog = state.catalog();
  const double capacity = state.network().memory_mb[static_cast<std::size_t>(bs)];

  // Shrink options of every idle model, scored once so that every candidate
  // sees the same baseline.
  std::vector<bool> busy(static_cast<std::size_t>(M));
  std::vector<std::vector<double>> shrink_gain(static_cast<std::size_t>(M));
  double fixed = 0.0;
  for (int m = 0; m < M; ++m) {
    busy[static_cast<std::size_t>(m)] = state.downloading(bs, m);
    if (busy[static_cast<std::size_t>(m)]) {
      fixed += catalog.submodel({m, state.target(bs, m)}).size_mb;
      continue;
    }
    const int cur = state.cached(bs, m);
    auto& g = shrink_gain[static_cast<std::size_t>(m)];
    g.assign(static_cast<std::size_t>(cur + 1), 0.0);
    if (cur == 0) continue;
    const double base = future_reward(state, bs, m, cur, freq, params);
    for (int l = 0; l < cur; ++l) g[static_cast<std::size_t>(l)] = future_reward(state, bs, m, l, freq, params) - base;
  }

  SwitchAction best;
  for (int m = 0; m < M; ++m) {
    if (busy[static_cast<std::size_t>(m)]) continue;
    const std::vector<int> targets = enlargement_targets(state, bs, m, params.slot_s);
    if (targets.empty()) continue;
    const double base = future_reward(state, bs, m, state.cached(bs, m), freq, params);
    for (int to : targets) {
      const double up = future_reward(state, bs, m, to, freq, params) - base;
      std::vector<KnapsackGroup> groups;
      std::vector<int> group_model;
      for (int o = 0; o < M; ++o) {
        if (o == m || busy[static_cast<std::size_t>(o)]) continue;
        KnapsackGroup g;
        for (int l = 0; l <= state.cached(bs, o); ++l) {
          g.push_back({catalog.submodel({o, l}).size_mb, shrink_gain[static_cast<std::size_t>(o)][static_cast<std::size_t>(l)]});
        }
        groups.push_back(std::move(g));
        group_model.push_back(o);
      }
      const double room = capacity - fixed - catalog.submodel({m, to}).size_mb;
      if (room < 0.0) continue;
      const KnapsackResult ks = knapsack_solve(groups, room, params.enumeration_limit);
      if (!ks.feasible) continue;
      const double total = up + ks.value;
      if (total > best.gain) {
        best.bs = bs;
        best.model = m;
        best.from = state.cached(bs, m);
        best.to = to;
        best.gain = total;
        best.companions.clear();
        for (std::size_t g = 0; g < groups.size(); ++g) {
          const int o = group_model[g];
          if (ks.choice[g] != state.cached(bs, o)) best.companions.push_back({o, ks.choice[g]});
        }
      }
    }
  }
  return best;
}

void apply_action(OnlineState& state, const SwitchAction& action) {
  if (action.noop()) return;
  for (const auto& [m, l] : action.companions) state.shrink(action.bs, m, l);
  if (action.to > state.target(action.bs, action.model)) {
    state.enqueue_upgrade(action.bs, action.model, action.to);
  } else if (action.to < state.target(action.bs, action.model)) {
    state.shrink(action.bs, action.model, action.to);
  }
}

std::vector<SwitchAction> CocarOlPolicy::decide(OnlineState& state, const FrequencyTracker& freq, Rng& rng) {
  std::vector<SwitchAction> out;
  for (int i = 0; i < params_.rounds; ++i) {
    const int bs = static_cast<int>(rng.below(static_cast<std::uint64_t>(state.bs_count())));
    SwitchAction a = choose_switch(state, bs, freq, params_);
    if (a.noop()) continue;
    apply_action(state, a);
    out.push_back(std::move(a));
  }
  return out;
}

SlotOutcome online_step(OnlineState& state, FrequencyTracker& freq,
                        const std::vector<Request>& requests, OnlinePolicy& policy,
                        const OnlineParams& params, Rng& rng) {
  SlotOutcome out;
  out.finished = advance_downloads(state, params.slot_s);
  settle_cache(state, out.finished);
  out.routes.reserve(requests.size());
  for (const Request& r : requests) {
    out.routes.push_back(route_best(r, state.cache(), state.network(), state.catalog(), params.qoe));
  }
  freq.update(requests);
  out.actions = policy.decide(state, freq, rng);
  return out;
}

void write_decision_log(std::ostream& out, int slot, const std::vector<SwitchAction>& actions) {
  for (const auto& a : actions) {
    if (a.noop()) continue;
    detail::json j = detail::json::parse(a.to_json());
    j["slot"] = slot;
    out << j.dump() << '\n';
  }
}

}  // namespace edgesim
