#pragma once

#include <cstdint>
#include <deque>
#include <ostream>
#include <string>
#include <vector>

#include "edgesim/online.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

struct OnlineParams {
  QoEParams qoe;
  double slot_s = 0.5;
  int rounds = 3;          // random BS picks per slot
  int history_slots = 10;  // frequency window
  int horizon_slots = 5;   // lookahead for the future reward
  int users = 600;         // demand scale for the future reward
  double data_mb = 0.144;  // representative request
  double deadline_s = 0.3;
  double mad_decay = 0.8;  // LFU-MAD recency weight
  std::int64_t enumeration_limit = 100000;
};

/// Sliding window of per-slot request counts per (home BS, model).
class FrequencyTracker {
 public:
  FrequencyTracker() = default;
  FrequencyTracker(int bs_count, int model_count, int window_slots, int users);

  void update(const std::vector<Request>& slot_requests);
  /// Share of all requests in the window: count / (window_slots * U).
  double f(int bs, int model) const;
  /// Raw count over the window.
  double count(int bs, int model) const;
  /// Counts weighted by decay^age, age 0 being the latest slot.
  double decayed(int bs, int model, double decay) const;
  int window_slots() const { return static_cast<int>(history_.size()); }
  int bs_count() const { return bs_count_; }
  int model_count() const { return model_count_; }

 private:
  int bs_count_ = 0;
  int model_count_ = 0;
  int window_ = 1;
  int users_ = 0;
  std::deque<std::vector<int>> history_;  // newest at the back
};

/// A cache switch at one BS: enlarge `model` from `from` to `to`, with the
/// listed companion models shrunk to the given levels first.
struct SwitchAction {
  int bs = -1;
  int model = -1;
  int from = 0;
  int to = 0;
  std::vector<std::pair<int, int>> companions;  // (model, new level)
  double gain = 0.0;

  bool noop() const { return bs < 0; }
  std::string to_json() const;
};

/// Levels an enlargement may target: every level whose predecessors' added
/// bytes fit in one slot of the link, plus the first level that does not.
std::vector<int> enlargement_targets(const OnlineState& state, int bs, int model, double slot_s);

/// Discounted demand-weighted QoE of `model` over the next horizon when the
/// model at `bs` is switched to `level` now and every other BS is frozen.
double future_reward(const OnlineState& state, int bs, int model, int level,
                     const FrequencyTracker& freq, const OnlineParams& params);

/// future_reward(level) - future_reward(current target).
double future_gain(const OnlineState& state, int bs, int model, int level,
                   const FrequencyTracker& freq, const OnlineParams& params);

/// Best enlargement at `bs` with its companion shrinks chosen by a
/// multiple-choice knapsack over the other models; no-op unless the summed
/// gain is positive. Models with downloads in flight are left alone.
SwitchAction choose_switch(const OnlineState& state, int bs, const FrequencyTracker& freq,
                           const OnlineParams& params);

/// Companion shrinks, then the enlargement download.
void apply_action(OnlineState& state, const SwitchAction& action);

/// Decision maker invoked once per slot after routing.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual std::vector<SwitchAction> decide(OnlineState& state, const FrequencyTracker& freq,
                                           Rng& rng) = 0;
};

class CocarOlPolicy : public OnlinePolicy {
 public:
  explicit CocarOlPolicy(OnlineParams params) : params_(params) {}
  std::vector<SwitchAction> decide(OnlineState& state, const FrequencyTracker& freq, Rng& rng) override;

 private:
  OnlineParams params_;
};

struct SlotOutcome {
  std::vector<RouteResult> routes;  // one per request
  std::vector<SwitchAction> actions;
  std::vector<FinishedDownload> finished;
};

/// One slot: advance downloads and settle, route every request, record the
/// demand, then let the policy switch caches.
SlotOutcome online_step(OnlineState& state, FrequencyTracker& freq,
                        const std::vector<Request>& requests, OnlinePolicy& policy,
                        const OnlineParams& params, Rng& rng);

/// Appends one JSON line per non-trivial action.
void write_decision_log(std::ostream& out, int slot, const std::vector<SwitchAction>& actions);

}  // namespace edgesim
