#include "edgesim/scenario.hpp"

#include <cmath>
#include <string>

#include "edgesim/error.hpp"

namespace edgesim {

namespace {

constexpr double kDeltaTolerance = 1e-6;

void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace

ModelCatalog::ModelCatalog(std::vector<ModelType> models) : models_(std::move(models)) {
  validate();
}

const ModelType& ModelCatalog::model(int m) const {
  if (m < 0 || m >= size()) throw Error(ErrorCode::UnknownModel, "model " + std::to_string(m));
  return models_[static_cast<std::size_t>(m)];
}

const Submodel& ModelCatalog::submodel(SubmodelRef ref) const {
  const ModelType& mt = model(ref.model);
  if (ref.level < 0 || ref.level > mt.top_level()) {
    throw Error(ErrorCode::InvalidArgument,
                "level " + std::to_string(ref.level) + " of model " + mt.name);
  }
  return mt.submodels[static_cast<std::size_t>(ref.level)];
}

int ModelCatalog::total_submodels() const {
  int total = 0;
  for (const auto& m : models_) total += m.levels();
  return total;
}

int ModelCatalog::max_levels() const {
  int best = 0;
  for (const auto& m : models_) best = std::max(best, m.levels());
  return best;
}

bool ModelCatalog::precedes(SubmodelRef a, SubmodelRef b) const {
  return a.model == b.model && a.level <= b.level;
}

ModelCatalog ModelCatalog::unpartitioned() const {
  std::vector<ModelType> out;
  out.reserve(models_.size());
  for (const auto& m : models_) {
    ModelType t;
    t.name = m.name;
    const int top = m.top_level();
    t.submodels.push_back(m.submodels[0]);
    Submodel full = m.submodels[static_cast<std::size_t>(top)];
    full.level = top > 0 ? 1 : 0;
    full.delta_mb = full.size_mb;
    if (top > 0) t.submodels.push_back(full);
    const auto& d = m.switch_s;
    const std::size_t topu = static_cast<std::size_t>(top);
    if (top > 0) {
      t.switch_s = {{0.0, d[0][topu]}, {d[topu][0], 0.0}};
    } else {
      t.switch_s = {{0.0}};
    }
    out.push_back(std::move(t));
  }
  return ModelCatalog(std::move(out));
}

void ModelCatalog::validate() const {
  for (const auto& m : models_) {
    const std::string& n = m.name;
    require(!m.submodels.empty(), ErrorCode::InvalidCatalog, n + ": no submodels");
    const Submodel& h0 = m.submodels[0];
    require(h0.size_mb == 0.0 && h0.gflops == 0.0 && h0.precision == 0.0 && h0.delta_mb == 0.0,
            ErrorCode::InvalidCatalog, n + ": h0 must be empty");
    double cumulative = 0.0;
    for (int j = 0; j <= m.top_level(); ++j) {
      const Submodel& s = m.submodels[static_cast<std::size_t>(j)];
      require(s.level == j, ErrorCode::InvalidCatalog, n + ": levels out of order");
      require(s.precision >= 0.0 && s.precision <= 1.0, ErrorCode::InvalidCatalog,
              n + ": precision outside [0,1]");
      if (j > 0) {
        const Submodel& p = m.submodels[static_cast<std::size_t>(j - 1)];
        require(s.size_mb > p.size_mb && s.gflops > p.gflops && s.precision > p.precision,
                ErrorCode::InvalidCatalog, n + ": catalog not monotone at level " + std::to_string(j));
        cumulative += s.delta_mb;
        require(std::fabs(cumulative - s.size_mb) <= kDeltaTolerance, ErrorCode::InvalidCatalog,
                n + ": delta sizes do not sum to size at level " + std::to_string(j));
      }
    }
    const std::size_t levels = m.submodels.size();
    require(m.switch_s.size() == levels, ErrorCode::InvalidCatalog, n + ": switch table shape");
    for (std::size_t a = 0; a < levels; ++a) {
      require(m.switch_s[a].size() == levels, ErrorCode::InvalidCatalog, n + ": switch table shape");
      require(m.switch_s[a][a] == 0.0, ErrorCode::InvalidCatalog, n + ": nonzero diagonal");
      for (std::size_t b = 0; b < levels; ++b) {
        require(m.switch_s[a][b] >= 0.0 && std::isfinite(m.switch_s[a][b]), ErrorCode::InvalidCatalog,
                n + ": negative switch time");
      }
    }
    for (std::size_t b = 1; b < levels; ++b) {
      for (std::size_t a = 1; a < b; ++a) {
        require(m.switch_s[0][b] >= m.switch_s[a][b], ErrorCode::InvalidCatalog,
                n + ": fresh load faster than switch-up");
      }
    }
  }
}

std::vector<int> Network::neighbors(int n) const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k) {
    if (hops[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] == 1) out.push_back(k);
  }
  return out;
}

void Network::validate() const {
  const std::size_t n = memory_mb.size();
  require(n >= 1, ErrorCode::InvalidNetwork, "no base stations");
  require(compute_gflops.size() == n && cloud_mbps.size() == n && wireless_mbps.size() == n &&
              wired_mbps.size() == n && hops.size() == n,
          ErrorCode::InvalidNetwork, "per-BS vectors disagree in length");
  require(per_hop_s >= 0.0, ErrorCode::InvalidNetwork, "negative propagation");
  for (std::size_t i = 0; i < n; ++i) {
    require(memory_mb[i] > 0 && compute_gflops[i] > 0 && cloud_mbps[i] > 0 && wireless_mbps[i] > 0,
            ErrorCode::InvalidNetwork, "capacities must be positive");
    require(wired_mbps[i].size() == n && hops[i].size() == n, ErrorCode::InvalidNetwork,
            "matrix shape");
    require(hops[i][i] == 0, ErrorCode::InvalidNetwork, "nonzero hop diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      require(wired_mbps[i][j] > 0, ErrorCode::InvalidNetwork, "wired rate must be positive");
      require(hops[i][j] >= 0 && hops[i][j] == hops[j][i], ErrorCode::InvalidNetwork,
              "hop matrix must be symmetric and finite");
      require(i == j || hops[i][j] > 0, ErrorCode::InvalidNetwork, "distinct BSs at zero hops");
    }
  }
}

double comm_latency(const Request& req, int target, const Network& net) {
  const auto home = static_cast<std::size_t>(req.home);
  const auto tgt = static_cast<std::size_t>(target);
  const double megabits = req.data_mb * kMegabitsPerMegabyte;
  const double wireless = megabits / net.wireless_mbps[home];
  const double wired = megabits / net.wired_mbps[home][tgt];
  // Round trip: user <-> home plus home <-> target, both directions.
  const double propagation = 2.0 * (1.0 + net.hops[home][tgt]) * net.per_hop_s;
  return wireless + wired + propagation;
}

double infer_latency(const Submodel& sub, double compute_gflops) {
  if (sub.empty()) throw Error(ErrorCode::InferenceOnEmptySubmodel, "cannot run inference on h0");
  return sub.gflops / compute_gflops;
}

double load_latency(SubmodelRef prev, SubmodelRef next, const ModelCatalog& catalog) {
  if (prev.model != next.model) {
    throw Error(ErrorCode::IncomparableSubmodels, "submodels of different model types");
  }
  const ModelType& m = catalog.model(prev.model);
  catalog.submodel(prev);
  catalog.submodel(next);
  return m.switch_s[static_cast<std::size_t>(prev.level)][static_cast<std::size_t>(next.level)];
}

double end_to_end_latency(const Request& req, int target, const Submodel& sub, const Network& net) {
  return comm_latency(req, target, net) +
         infer_latency(sub, net.compute_gflops[static_cast<std::size_t>(target)]);
}

}  // namespace edgesim
