#pragma once

#include <string>
#include <vector>

namespace edgesim {

inline constexpr double kMegabitsPerMegabyte = 8.0;
/// Route target used for requests that are not served by any BS.
inline constexpr int kCloud = -1;

/// One version of a dynamic DNN. Level 0 is the empty submodel h0.
struct Submodel {
  int level = 0;
  double size_mb = 0.0;
  double gflops = 0.0;     // per request
  double precision = 0.0;  // in [0, 1]
  double delta_mb = 0.0;   // bytes added on top of level - 1
  bool empty() const { return level == 0; }
};

struct SubmodelRef {
  int model = 0;
  int level = 0;
  friend bool operator==(const SubmodelRef&, const SubmodelRef&) = default;
};

struct ModelType {
  std::string name;
  /// Ordered h0, h1, ..., hH.
  std::vector<Submodel> submodels;
  /// (H+1) x (H+1) loading times in seconds, row = cached level, column =
  /// target level. Row 0 holds the fresh-load times.
  std::vector<std::vector<double>> switch_s;

  int top_level() const { return static_cast<int>(submodels.size()) - 1; }
  int levels() const { return static_cast<int>(submodels.size()); }
};

/// Immutable set of model types with their submodel chains.
class ModelCatalog {
 public:
  ModelCatalog() = default;
  explicit ModelCatalog(std::vector<ModelType> models);

  int size() const { return static_cast<int>(models_.size()); }
  const ModelType& model(int m) const;
  const std::vector<ModelType>& models() const { return models_; }
  const Submodel& submodel(SubmodelRef ref) const;
  /// |H|: every submodel of every model, empty ones included.
  int total_submodels() const;
  /// h*: the largest |H(m)|, empty submodel included.
  int max_levels() const;
  /// Partial order: true iff both belong to one model and a is no larger.
  bool precedes(SubmodelRef a, SubmodelRef b) const;
  /// Same models restricted to {h0, h_max}: the "no partitioning" ablation.
  ModelCatalog unpartitioned() const;

 private:
  void validate() const;
  std::vector<ModelType> models_;
};

/// Built-in catalog: ViT from the measured attribute and loading-time tables,
/// followed by `model_count - 1` types derived from it by seeded scaling.
ModelCatalog default_catalog(int model_count = 8);

std::string catalog_to_json(const ModelCatalog& catalog);
ModelCatalog catalog_from_json(const std::string& text);
ModelCatalog load_catalog(const std::string& path);

struct Network {
  std::vector<double> memory_mb;
  std::vector<double> compute_gflops;  // Gflops/s
  std::vector<double> cloud_mbps;
  std::vector<double> wireless_mbps;
  std::vector<std::vector<double>> wired_mbps;
  std::vector<std::vector<int>> hops;
  double per_hop_s = 0.01;

  int size() const { return static_cast<int>(memory_mb.size()); }
  /// BSs exactly one hop away.
  std::vector<int> neighbors(int n) const;
  void validate() const;
};

struct Request {
  int user = 0;
  int model = 0;
  int home = 0;
  double data_mb = 0.0;
  double deadline_s = 0.0;
  /// Seconds into the observation window (offline); 0 online.
  double start_s = 0.0;
};

/// Wireless upload, wired forwarding and round-trip propagation for routing
/// `req` from its home BS to `target`.
double comm_latency(const Request& req, int target, const Network& net);

/// Forward-pass time of `sub` on a BS with `compute_gflops` Gflops/s. Flops
/// are per request, so the payload size does not scale this term.
double infer_latency(const Submodel& sub, double compute_gflops);

/// Time to go from cached `prev` to `next` of the same model.
double load_latency(SubmodelRef prev, SubmodelRef next, const ModelCatalog& catalog);

double end_to_end_latency(const Request& req, int target, const Submodel& sub,
                          const Network& net);

}  // namespace edgesim
