#include "edgesim/audit.hpp"

#include <cstdio>

namespace edgesim {

namespace {

constexpr double kSlack = 1e-9;

std::string fmt(const char* pattern, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

AuditReport audit_plan(const FeasiblePlan& plan, const Network& net, const ModelCatalog& catalog,
                       const PrevCache& prev, const std::vector<Request>& requests) {
  AuditReport rep;
  auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
  const int N = net.size();
  const int M = catalog.size();
  const CacheState& c = plan.cache;
  if (c.bs_count != N || c.model_count != M || c.level.size() != static_cast<std::size_t>(N * M)) {
    fail("cache shape does not match the scenario");
    return rep;
  }
  if (plan.route.size() != requests.size() || plan.precision.size() != requests.size()) {
    fail("route vector does not match the request list");
    return rep;
  }
  for (int n = 0; n < N; ++n) {
    double used = 0.0;
    for (int m = 0; m < M; ++m) {
      const auto& mt = catalog.models()[static_cast<std::size_t>(m)];
      const int l = c.level[static_cast<std::size_t>(n * M + m)];
      if (l < 0 || l >= static_cast<int>(mt.submodels.size())) {
        fail("BS " + std::to_string(n) + " model " + std::to_string(m) + ": no single cached submodel");
        continue;
      }
      used += mt.submodels[static_cast<std::size_t>(l)].size_mb;
    }
    const double cap = net.memory_mb[static_cast<std::size_t>(n)];
    if (used > cap + kSlack) fail("BS " + std::to_string(n) + fmt(": memory %.6f > %.6f", used, cap));
  }
  if (!rep.ok()) return rep;

  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& q = requests[r];
    const std::string who = "request " + std::to_string(r);
    const int n = plan.route[r];
    if (n == kCloud) {
      if (plan.precision[r] != 0.0) fail(who + ": cloud-served request with nonzero precision");
      continue;
    }
    if (n < 0 || n >= N) {
      fail(who + ": routed to unknown BS");
      continue;
    }
    const auto& mt = catalog.models()[static_cast<std::size_t>(q.model)];
    const int l = c.level[static_cast<std::size_t>(n * M + q.model)];
    if (l == 0) {
      fail(who + ": routed to a BS without its model");
      continue;
    }
    const auto& sub = mt.submodels[static_cast<std::size_t>(l)];
    if (plan.precision[r] != sub.precision) fail(who + ": precision does not match the cached submodel");

    const auto h = static_cast<std::size_t>(q.home);
    const auto t = static_cast<std::size_t>(n);
    const double bits = q.data_mb * 8.0;
    const double latency = bits / net.wireless_mbps[h] + bits / net.wired_mbps[h][t] +
                           2.0 * (1.0 + net.hops[h][t]) * net.per_hop_s + sub.gflops / net.compute_gflops[t];
    if (latency > q.deadline_s + kSlack) fail(who + fmt(": latency %.6f > deadline %.6f", latency, q.deadline_s));

    const int before = prev.level[static_cast<std::size_t>(n * M + q.model)];
    const double load = mt.switch_s[static_cast<std::size_t>(before)][static_cast<std::size_t>(l)];
    if (load > q.start_s + kSlack) fail(who + fmt(": load time %.6f > start %.6f", load, q.start_s));
  }
  return rep;
}

}  // namespace edgesim
