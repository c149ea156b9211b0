#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edgesim/formulation.hpp"
#include "edgesim/plan.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

/// Integral outcome of one rounding draw, before repair.
struct RoundedPlan {
  CacheState cache;  // x~: exactly one level per (BS, model)
  /// A~ support per request: (bs, level) pairs with A~ = 1. Every pair
  /// matches the cached level, so A~ <= x~ holds by construction.
  std::vector<std::vector<std::pair<int, int>>> assigned;
  double objective = 0.0;

  /// y~(r, n) = 1 iff the request has some A~ at `bs`.
  bool routed(int request, int bs) const;
};

/// Multinoulli draw of each (BS, model) from x, then a Bernoulli(A/x) draw
/// (0/0 counts as 0) for the sampled level of each (request, BS).
RoundedPlan round_fractional(const Fractional& frac, const ModelCatalog& catalog,
                             const std::vector<Request>& requests, Rng& rng);

/// Per-constraint ratio of the rounded left-hand side to its bound.
struct ViolationReport {
  std::vector<double> memory_factor;    // per BS: used / R_n
  std::vector<double> routing_factor;   // per request: sum of A~ (bound 1)
  std::vector<double> deadline_factor;  // per request: latency sum / ddl
  std::vector<double> load_factor;      // per request: load sum / s_u (inf if s_u = 0 and load > 0)
  double max_memory = 0.0, max_routing = 0.0, max_deadline = 0.0, max_load = 0.0;
  /// Reference multiplicative factors from the concentration bounds, given
  /// zeta (smallest capacity-to-item ratio) and the LP value; informational.
  double bound_factor_capacity = 0.0;
  double bound_factor_objective = 0.0;

  std::string to_json() const;
};

ViolationReport violation_report(const RoundedPlan& plan, const Fractional& frac,
                                 const Network& net, const ModelCatalog& catalog,
                                 const PrevCache& prev, const std::vector<Request>& requests);

/// Empirical means of the objective and of every constraint's left-hand side
/// over repeated roundings, against the fractional values.
struct ExpectationReport {
  struct Row {
    std::string name;
    double fractional = 0.0;  // LHS at the fractional point
    double mean = 0.0;
    double std_error = 0.0;
    bool flagged = false;  // mean > fractional + 3 standard errors
  };
  int trials = 0;
  double fractional_objective = 0.0;
  double mean_objective = 0.0;
  double objective_std_error = 0.0;
  std::vector<Row> rows;
  int flagged() const;
};

ExpectationReport expectation_check(const Fractional& frac, const Network& net,
                                    const ModelCatalog& catalog, const PrevCache& prev,
                                    const std::vector<Request>& requests, int trials, Rng& rng);

/// Memory eviction, deadline/load-time drops, then one route per request.
FeasiblePlan repair(const RoundedPlan& plan, const Network& net, const ModelCatalog& catalog,
                    const PrevCache& prev, const std::vector<Request>& requests);

/// Re-express a feasible plan as a rounded plan so it can be repaired again.
RoundedPlan as_rounded(const FeasiblePlan& plan, const std::vector<Request>& requests);

struct CocarOptions {
  FormulationOptions formulation;
  int repeats = 1;  // independent roundings; the best repaired plan is kept
};

struct CocarResult {
  Fractional fractional;
  RoundedPlan rounded;
  FeasiblePlan plan;
};

/// Solve, round, repair for one observation window.
CocarResult cocar_window(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                         const std::vector<Request>& requests, const CocarOptions& options,
                         Rng& rng);

}  // namespace edgesim
