#pragma once

#include <deque>
#include <vector>

#include "edgesim/plan.hpp"
#include "edgesim/scenario.hpp"

namespace edgesim {

struct QoEParams {
  double theta = 0.0;  // normalization latency, seconds
  double alpha = 0.9;  // 1/s
  double gamma = 0.9;  // discount for future slots
};

/// P * max(0, 1 - (T - theta) * alpha).
double qoe(double precision, double latency, const QoEParams& params);

/// Smallest end-to-end latency any request of size `data_mb` can see: served
/// at its own home BS by the lightest submodel on the fastest server.
double min_latency(const Network& net, const ModelCatalog& catalog, double data_mb);

/// One submodel increment waiting on a BS's cloud link.
struct PendingDownload {
  int model = 0;
  int level = 0;
  double remaining_mb = 0.0;
};

struct FinishedDownload {
  int bs = 0;
  int model = 0;
  int level = 0;
};

/// Slot-level cache and download state of every BS. Downloads of a BS share
/// its cloud link first-in first-out; a chain of increments for one model is
/// queued in submodel order.
class OnlineState {
 public:
  OnlineState() = default;
  OnlineState(const Network& net, const ModelCatalog& catalog);

  int bs_count() const { return cache_.bs_count; }
  int model_count() const { return cache_.model_count; }
  const ModelCatalog& catalog() const { return *catalog_; }
  const Network& network() const { return *net_; }

  /// Level currently usable for inference (0 = nothing).
  int cached(int bs, int model) const { return cache_.at(bs, model); }
  const CacheState& cache() const { return cache_; }
  /// Highest level cached or queued.
  int target(int bs, int model) const;
  bool downloading(int bs, int model) const;
  const std::deque<PendingDownload>& queue(int bs) const {
    return queues_[static_cast<std::size_t>(bs)];
  }
  /// O for (bs, model, level): bytes still to arrive, 0 if not queued.
  double pending_mb(int bs, int model, int level) const;
  double bytes_in_flight(int bs) const;
  /// Megabytes per second of the BS's cloud link.
  double link_rate(int bs) const;

  /// Memory claimed by cached plus in-flight submodels.
  double footprint_mb(int bs) const;
  double cached_mb(int bs) const { return cache_.used_mb(bs, *catalog_); }

  /// Direct placement, used for warm starts and tests.
  void set_cached(int bs, int model, int level);
  /// Queue the increments from the current target up to `level`.
  void enqueue_upgrade(int bs, int model, int level);
  /// Instant eviction down to `level`, dropping queued increments above it.
  void shrink(int bs, int model, int level);

 private:
  friend std::vector<FinishedDownload> advance_downloads(OnlineState&, double, int);
  friend void settle_cache(OnlineState&, const std::vector<FinishedDownload>&);

  const Network* net_ = nullptr;
  const ModelCatalog* catalog_ = nullptr;
  CacheState cache_;
  std::vector<std::deque<PendingDownload>> queues_;
};

/// Moves bytes for one slot of length `dt` on every BS (or only `only_bs`
/// when it is >= 0). Each queued increment gets the slot time left after the
/// increments ahead of it, and finished increments leave the queue.
std::vector<FinishedDownload> advance_downloads(OnlineState& state, double dt, int only_bs = -1);

/// Finished increments become cached; a larger finished level replaces a
/// smaller cached one of the same model.
void settle_cache(OnlineState& state, const std::vector<FinishedDownload>& finished);

struct RouteResult {
  int target = kCloud;
  double qoe = 0.0;
  double latency = 0.0;
  double precision = 0.0;
};

/// Best BS by QoE among those caching the model within the deadline; ties go
/// to lower latency, then lower BS id. Falls back to the cloud at QoE 0.
RouteResult route_best(const Request& req, const CacheState& cache, const Network& net,
                       const ModelCatalog& catalog, const QoEParams& params);

}  // namespace edgesim
