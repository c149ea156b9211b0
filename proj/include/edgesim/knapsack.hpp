#pragma once

#include <cstdint>
#include <vector>

namespace edgesim {

/// Multiple-choice knapsack: pick exactly one option per group, maximize the
/// summed value subject to the summed weight fitting the capacity.
struct KnapsackOption {
  double weight_mb = 0.0;
  double value = 0.0;
};
using KnapsackGroup = std::vector<KnapsackOption>;

struct KnapsackResult {
  bool feasible = false;
  std::vector<int> choice;  // option index per group
  double value = 0.0;       // summed in group order
  std::int64_t weight = 0;  // in weight units
};

/// Weights are compared in units of 0.01 MB: option weights round up and the
/// capacity rounds down, so an accepted choice also fits in exact megabytes.
std::int64_t weight_units_up(double mb);
std::int64_t weight_units_down(double mb);

/// Ties: higher value, then lower weight, then the lexicographically smallest
/// choice vector. Both solvers follow the same rule and sum values in group
/// order, so they agree bit for bit.
KnapsackResult knapsack_enumerate(const std::vector<KnapsackGroup>& groups, double capacity_mb);
KnapsackResult knapsack_dp(const std::vector<KnapsackGroup>& groups, double capacity_mb);

/// Enumeration when the option space has at most `enumeration_limit`
/// combinations, otherwise the DP.
KnapsackResult knapsack_solve(const std::vector<KnapsackGroup>& groups, double capacity_mb,
                              std::int64_t enumeration_limit = 100000);

}  // namespace edgesim
