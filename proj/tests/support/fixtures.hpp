#pragma once

// Small hand-built networks and catalogs shared by the unit tests.

#include <array>
#include <string>
#include <vector>

#include "edgesim/scenario.hpp"

namespace fixture {

using namespace edgesim;

/// A model from (size MB, GFlops, precision) triples; loading takes
/// `s_per_mb` seconds per megabyte added, downgrades take 10 ms.
inline ModelType make_model(const std::string& name, const std::vector<std::array<double, 3>>& subs,
                            double s_per_mb = 0.001) {
  ModelType m;
  m.name = name;
  m.submodels.push_back(Submodel{});
  double prev = 0.0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Submodel s;
    s.level = static_cast<int>(i + 1);
    s.size_mb = subs[i][0];
    s.gflops = subs[i][1];
    s.precision = subs[i][2];
    s.delta_mb = subs[i][0] - prev;
    prev = subs[i][0];
    m.submodels.push_back(s);
  }
  const std::size_t L = m.submodels.size();
  m.switch_s.assign(L, std::vector<double>(L, 0.0));
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = 0; b < L; ++b) {
      if (b > a) m.switch_s[a][b] = (m.submodels[b].size_mb - m.submodels[a].size_mb) * s_per_mb;
      if (b < a && b > 0) m.switch_s[a][b] = 0.01;
    }
  }
  return m;
}

/// `n` BSs with the default link rates; hops default to a complete graph.
inline Network make_network(int n, double memory_mb, std::vector<std::vector<int>> hops = {}) {
  Network net;
  const auto N = static_cast<std::size_t>(n);
  net.memory_mb.assign(N, memory_mb);
  net.compute_gflops.assign(N, 70.0);
  net.cloud_mbps.assign(N, 800.0);
  net.wireless_mbps.assign(N, 20.0);
  net.wired_mbps.assign(N, std::vector<double>(N, 100.0));
  if (hops.empty()) {
    hops.assign(N, std::vector<int>(N, 1));
    for (std::size_t i = 0; i < N; ++i) hops[i][i] = 0;
  }
  net.hops = hops;
  net.per_hop_s = 0.01;
  return net;
}

inline Request make_request(int user, int model, int home, double deadline = 0.3, double start = 0.0) {
  Request r;
  r.user = user;
  r.model = model;
  r.home = home;
  r.data_mb = 0.144;
  r.deadline_s = deadline;
  r.start_s = start;
  return r;
}

/// The measured ViT chain alone.
inline ModelCatalog vit_catalog() { return default_catalog(1); }

}  // namespace fixture
