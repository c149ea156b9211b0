#include "edgesim/online.hpp"

#include <algorithm>
#include <limits>

#include "edgesim/error.hpp"

namespace edgesim {

namespace {

// Residues below this are floating noise from t * rate products.
constexpr double kByteEpsilon = 1e-9;

}  // namespace

double qoe(double precision, double latency, const QoEParams& params) {
  return precision * std::max(0.0, 1.0 - (latency - params.theta) * params.alpha);
}

double min_latency(const Network& net, const ModelCatalog& catalog, double data_mb) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < net.size(); ++n) {
    Request probe;
    probe.home = n;
    probe.data_mb = data_mb;
    const double comm = comm_latency(probe, n, net);
    for (const auto& m : catalog.models()) {
      if (m.top_level() < 1) continue;
      best = std::min(best, comm + infer_latency(m.submodels[1], net.compute_gflops[static_cast<std::size_t>(n)]));
    }
  }
  return best;
}

OnlineState::OnlineState(const Network& net, const ModelCatalog& catalog)
    : net_(&net), catalog_(&catalog), cache_(CacheState::empty(net.size(), catalog.size())),
      queues_(static_cast<std::size_t>(net.size())) {}

int OnlineState::target(int bs, int model) const {
  int t = cached(bs, model);
  for (const auto& d : queue(bs)) {
    if (d.model == model) t = std::max(t, d.level);
  }
  return t;
}

bool OnlineState::downloading(int bs, int model) const {
  for (const auto& d : queue(bs)) {
    if (d.model == model) return true;
  }
  return false;
}

double OnlineState::pending_mb(int bs, int model, int level) const {
  for (const auto& d : queue(bs)) {
    if (d.model == model && d.level == level) return d.remaining_mb;
  }
  return 0.0;
}

double OnlineState::bytes_in_flight(int bs) const {
  double total = 0.0;
  for (const auto& d : queue(bs)) total += d.remaining_mb;
  return total;
}

double OnlineState::link_rate(int bs) const {
  return net_->cloud_mbps[static_cast<std::size_t>(bs)] / kMegabitsPerMegabyte;
}

double OnlineState::footprint_mb(int bs) const {
  double total = 0.0;
  for (int m = 0; m < model_count(); ++m) total += catalog_->submodel({m, target(bs, m)}).size_mb;
  return total;
}

void OnlineState::set_cached(int bs, int model, int level) {
  catalog_->submodel({model, level});
  auto& q = queues_[static_cast<std::size_t>(bs)];
  std::erase_if(q, [&](const PendingDownload& d) { return d.model == model; });
  cache_.set(bs, model, level);
}

void OnlineState::enqueue_upgrade(int bs, int model, int level) {
  catalog_->submodel({model, level});
  auto& q = queues_[static_cast<std::size_t>(bs)];
  for (int l = target(bs, model) + 1; l <= level; ++l) {
    q.push_back({model, l, catalog_->submodel({model, l}).delta_mb});
  }
}

void OnlineState::shrink(int bs, int model, int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "negative level");
  auto& q = queues_[static_cast<std::size_t>(bs)];
  std::erase_if(q, [&](const PendingDownload& d) { return d.model == model && d.level > level; });
  if (cached(bs, model) > level) cache_.set(bs, model, level);
}

std::vector<FinishedDownload> advance_downloads(OnlineState& state, double dt, int only_bs) {
  std::vector<FinishedDownload> done;
  for (int n = 0; n < state.bs_count(); ++n) {
    if (only_bs >= 0 && n != only_bs) continue;
    auto& q = state.queues_[static_cast<std::size_t>(n)];
    const double rate = state.link_rate(n);
    double ahead = 0.0;
    for (auto& d : q) {
      const double before = d.remaining_mb;
      const double usable = dt - std::min(ahead / rate, dt);
      double after = std::max(before - usable * rate, 0.0);
      if (after < kByteEpsilon) after = 0.0;
      ahead += before;
      d.remaining_mb = after;
      if (before > 0.0 && after == 0.0) done.push_back({n, d.model, d.level});
    }
    std::erase_if(q, [](const PendingDownload& d) { return d.remaining_mb == 0.0; });
  }
  return done;
}

void settle_cache(OnlineState& state, const std::vector<FinishedDownload>& finished) {
  for (const auto& f : finished) {
    if (f.level > state.cached(f.bs, f.model)) state.cache_.set(f.bs, f.model, f.level);
  }
}

RouteResult route_best(const Request& req, const CacheState& cache, const Network& net,
                       const ModelCatalog& catalog, const QoEParams& params) {
  RouteResult best;
  bool found = false;
  for (int n = 0; n < net.size(); ++n) {
    const int l = cache.at(n, req.model);
    if (l == 0) continue;
    const Submodel& sub = catalog.submodel({req.model, l});
    const double t = end_to_end_latency(req, n, sub, net);
    if (t > req.deadline_s) continue;
    const double q = qoe(sub.precision, t, params);
    if (!found || q > best.qoe || (q == best.qoe && t < best.latency)) {
      best = {n, q, t, sub.precision};
      found = true;
    }
  }
  if (!found || best.qoe <= 0.0) return RouteResult{};
  return best;
}

}  // namespace edgesim
