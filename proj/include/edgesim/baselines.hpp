#pragma once

#include <string>
#include <vector>

#include "edgesim/cocar_ol.hpp"
#include "edgesim/plan.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

enum class PolicyKind { OfflineGreedy, OfflineRandom, OnlineLFU, OnlineLFUMAD, OnlineRandom, CoCaR, CoCaROL };

/// A policy plus the submodel-partitioning switch. Without partitioning every
/// model can only be absent or complete; offline policies ignore the flag.
struct PolicyId {
  PolicyKind kind = PolicyKind::CoCaR;
  bool partitioned = true;

  bool offline() const;
  /// "cocar", "greedy", "random" offline; "cocar-ol", "lfu", "lfu-mad",
  /// "random" online; a "-nopart" suffix clears `partitioned`.
  std::string name() const;
  std::string kind_name() const;
  friend bool operator==(const PolicyId&, const PolicyId&) = default;
};

PolicyId parse_policy(const std::string& text, bool offline_mode);

/// Per BS, models in descending request count (ties by id); each gets the
/// most precise submodel that still fits. Requests go to their home BS and
/// fall back to the cloud when the model, deadline or load time rules it out.
FeasiblePlan offline_greedy(const Network& net, const ModelCatalog& catalog,
                            const std::vector<Request>& requests, const PrevCache& prev);

/// Uniform submodel per (BS, model), redrawn until memory fits (bounded, then
/// shrinking the largest until it fits); each request tries one uniform BS.
FeasiblePlan offline_random(const Network& net, const ModelCatalog& catalog,
                            const std::vector<Request>& requests, const PrevCache& prev, Rng& rng);

/// Keep the routes of `route` that are actually servable by `cache`.
FeasiblePlan finalize_routes(const CacheState& cache, const std::vector<int>& route,
                             const Network& net, const ModelCatalog& catalog,
                             const std::vector<Request>& requests, const PrevCache& prev);

/// Least-frequently-used: enlarge the most requested model by one step at the
/// picked BS, shrinking the least requested ones step by step until it fits.
/// Demand counts the BS and its one-hop neighbours. With `decay` < 1 the
/// counts are recency weighted (LFU-MAD); decay 1 is plain LFU.
class LfuPolicy : public OnlinePolicy {
 public:
  LfuPolicy(OnlineParams params, double decay) : params_(params), decay_(decay) {}
  std::vector<SwitchAction> decide(OnlineState& state, const FrequencyTracker& freq, Rng& rng) override;
  /// The action for one BS (no-op when nothing qualifies).
  SwitchAction action_for(const OnlineState& state, int bs, const FrequencyTracker& freq) const;

 private:
  OnlineParams params_;
  double decay_;
};

/// Enlarge a uniformly chosen model by one step with a uniformly chosen
/// memory-feasible set of companion shrinks.
class RandomOnlinePolicy : public OnlinePolicy {
 public:
  explicit RandomOnlinePolicy(OnlineParams params) : params_(params) {}
  std::vector<SwitchAction> decide(OnlineState& state, const FrequencyTracker& freq, Rng& rng) override;

 private:
  OnlineParams params_;
};

/// Warm start: each BS gets the smallest submodel of its most popular models
/// while memory lasts.
void warm_start(OnlineState& state, const std::vector<std::vector<double>>& popularity_per_bs);

}  // namespace edgesim
