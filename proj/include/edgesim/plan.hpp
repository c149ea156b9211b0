#pragma once

#include <vector>

#include "edgesim/scenario.hpp"

namespace edgesim {

/// One cached level per (BS, model); level 0 means nothing is cached.
struct CacheState {
  int bs_count = 0;
  int model_count = 0;
  std::vector<int> level;  // [bs * model_count + model]

  static CacheState empty(int bs_count, int model_count);

  int at(int bs, int model) const {
    return level[static_cast<std::size_t>(bs * model_count + model)];
  }
  void set(int bs, int model, int lvl) {
    level[static_cast<std::size_t>(bs * model_count + model)] = lvl;
  }
  double used_mb(int bs, const ModelCatalog& catalog) const;

  friend bool operator==(const CacheState&, const CacheState&) = default;
};

/// The cache of the previous observation window.
using PrevCache = CacheState;

/// Integral cache plus one route per request (a BS id or kCloud).
struct FeasiblePlan {
  CacheState cache;
  std::vector<int> route;
  std::vector<double> precision;  // 0 for cloud-served requests

  double objective() const;
  friend bool operator==(const FeasiblePlan&, const FeasiblePlan&) = default;
};

/// Request served at `bs` with whatever `cache` holds there for its model.
/// Returns false when the model is not cached at `bs`.
bool served_latency(const Request& req, int bs, const CacheState& cache, const Network& net,
                    const ModelCatalog& catalog, double* latency);

}  // namespace edgesim
