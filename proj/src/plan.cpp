#include "edgesim/plan.hpp"

#include <numeric>

namespace edgesim {

CacheState CacheState::empty(int bs_count, int model_count) {
  CacheState c;
  c.bs_count = bs_count;
  c.model_count = model_count;
  c.level.assign(static_cast<std::size_t>(bs_count * model_count), 0);
  return c;
}

double CacheState::used_mb(int bs, const ModelCatalog& catalog) const {
  double used = 0.0;
  for (int m = 0; m < model_count; ++m) used += catalog.submodel({m, at(bs, m)}).size_mb;
  return used;
}

double FeasiblePlan::objective() const {
  return std::accumulate(precision.begin(), precision.end(), 0.0);
}

bool served_latency(const Request& req, int bs, const CacheState& cache, const Network& net,
                    const ModelCatalog& catalog, double* latency) {
  const int lvl = cache.at(bs, req.model);
  if (lvl == 0) return false;
  *latency = end_to_end_latency(req, bs, catalog.submodel({req.model, lvl}), net);
  return true;
}

}  // namespace edgesim
