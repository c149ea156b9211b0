#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgesim/lp.hpp"
#include "edgesim/plan.hpp"
#include "edgesim/scenario.hpp"

namespace edgesim {

/// Column layout of the relaxed caching/routing LP. x(n,m,l) columns come
/// first, one per submodel per BS; A(r,n,l) columns follow, one per request,
/// BS and level of the requested model (absent ones are -1).
struct VarIndex {
  int bs_count = 0;
  int submodel_total = 0;
  std::vector<int> model_offset;  // first flat submodel id of each model
  int x_count = 0;

  struct ACol {
    int request = 0;
    int bs = 0;
    int level = 0;
  };
  std::vector<std::vector<int>> a_cols;  // [request][bs * levels + level]
  std::vector<int> request_levels;       // levels of each request's model
  std::vector<ACol> a_meta;              // [column - x_count]

  int x(int bs, int model, int level) const {
    return bs * submodel_total + model_offset[static_cast<std::size_t>(model)] + level;
  }
  int a(int request, int bs, int level) const {
    const auto r = static_cast<std::size_t>(request);
    return a_cols[r][static_cast<std::size_t>(bs * request_levels[r] + level)];
  }
  int num_cols() const { return x_count + static_cast<int>(a_meta.size()); }
};

struct FormulationOptions {
  /// Drop A columns that break their own deadline or load-time row on their
  /// own (never usable by an integral plan), the zero-value h0 columns, and
  /// the deadline/load rows that become implied. Off: the literal relaxation.
  bool presolve = true;
  /// Above this many A columns the requests are split into batches.
  int variable_cap = 20000;
  std::uint64_t seed = 1;  // batch assignment when sharding
  LpOptions lp;
};

struct P1lr {
  LpProblem problem;
  VarIndex index;
  int pruned_requests = 0;  // requests with no usable column at all
};

P1lr build_p1lr(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                const std::vector<Request>& requests, const FormulationOptions& options = {});

/// Row count of the literal relaxation: N*M + N + 3U + sum_u N*|H(m_u)|.
std::size_t p1lr_row_tally(int bs_count, const ModelCatalog& catalog,
                           const std::vector<Request>& requests);

/// Coefficient of A(r,n,l) in the deadline row: end-to-end latency, with h0
/// charged communication only.
double deadline_coefficient(const Request& req, int bs, int level, const Network& net,
                            const ModelCatalog& catalog);
/// Coefficient of A(r,n,l) in the load-time row.
double load_coefficient(const Request& req, int bs, int level, const PrevCache& prev,
                        const ModelCatalog& catalog);

/// Named fractional solution.
struct Fractional {
  int bs_count = 0;
  int model_count = 0;
  int submodel_total = 0;
  std::vector<int> model_offset;
  std::vector<double> x;                       // [bs * submodel_total + offset + level]
  std::vector<std::vector<double>> a;          // [request][bs * levels + level]
  std::vector<int> request_levels;
  double objective = 0.0;
  bool approximate = false;  // assembled from sharded batches

  double x_at(int bs, int model, int level) const {
    return x[static_cast<std::size_t>(bs * submodel_total + model_offset[static_cast<std::size_t>(model)] + level)];
  }
  double& x_at(int bs, int model, int level) {
    return x[static_cast<std::size_t>(bs * submodel_total + model_offset[static_cast<std::size_t>(model)] + level)];
  }
  double a_at(int request, int bs, int level) const {
    const auto r = static_cast<std::size_t>(request);
    return a[r][static_cast<std::size_t>(bs * request_levels[r] + level)];
  }
  /// y support: the request has positive routing mass at `bs`.
  bool routed(int request, int bs) const;
};

/// Values clamped into [0, 1]; throws SolutionNotOptimal unless Optimal.
Fractional decode(const LpSolution& solution, const VarIndex& index, const ModelCatalog& catalog,
                  const std::vector<Request>& requests);

/// Build, solve and decode, sharding requests across several LPs when the
/// column count exceeds `options.variable_cap`.
Fractional solve_p1lr(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                      const std::vector<Request>& requests, const FormulationOptions& options = {});

}  // namespace edgesim
