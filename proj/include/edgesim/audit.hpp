#pragma once

#include <string>
#include <vector>

#include "edgesim/plan.hpp"
#include "edgesim/scenario.hpp"

namespace edgesim {

struct AuditReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Re-checks a deployed plan against the raw scenario data: one submodel per
/// (BS, model), memory, at most one serving BS per request with the model
/// actually cached there, deadline and load time. Latencies are recomputed
/// here from the network tables rather than through the library helpers.
AuditReport audit_plan(const FeasiblePlan& plan, const Network& net, const ModelCatalog& catalog,
                       const PrevCache& prev, const std::vector<Request>& requests);

}  // namespace edgesim
