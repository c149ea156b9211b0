#include "edgesim/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "edgesim/error.hpp"

namespace edgesim {

namespace {

constexpr double kUnitsPerMb = 100.0;

bool better(double value, std::int64_t weight, const std::vector<int>& choice, const KnapsackResult& best) {
  if (!best.feasible) return true;
  if (value != best.value) return value > best.value;
  if (weight != best.weight) return weight < best.weight;
  return choice < best.choice;
}

void check(const std::vector<KnapsackGroup>& groups) {
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::InvalidArgument, "knapsack group without options");
    for (const auto& o : g) {
      if (!std::isfinite(o.value) || !std::isfinite(o.weight_mb) || o.weight_mb < 0) {
        throw Error(ErrorCode::InvalidArgument, "knapsack option with invalid weight or value");
      }
    }
  }
}

}  // namespace

std::int64_t weight_units_up(double mb) {
  return static_cast<std::int64_t>(std::ceil(mb * kUnitsPerMb - 1e-7));
}

std::int64_t weight_units_down(double mb) {
  return static_cast<std::int64_t>(std::floor(mb * kUnitsPerMb + 1e-7));
}

KnapsackResult knapsack_enumerate(const std::vector<KnapsackGroup>& groups, double capacity_mb) {
  check(groups);
  const std::int64_t cap = weight_units_down(capacity_mb);
  KnapsackResult best;
  std::vector<int> choice(groups.size(), 0);
  while (true) {
    double value = 0.0;
    std::int64_t weight = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& o = groups[g][static_cast<std::size_t>(choice[g])];
      value += o.value;
      weight += weight_units_up(o.weight_mb);
    }
    if (weight <= cap && better(value, weight, choice, best)) {
      best.feasible = true;
      best.value = value;
      best.weight = weight;
      best.choice = choice;
    }
    // Odometer increment, last group fastest, so choices come in lex order.
    std::size_t g = groups.size();
    while (g > 0) {
      --g;
      if (++choice[g] < static_cast<int>(groups[g].size())) break;
      choice[g] = 0;
      if (g == 0) return best;
    }
    if (groups.empty()) return best;
  }
}

KnapsackResult knapsack_dp(const std::vector<KnapsackGroup>& groups, double capacity_mb) {
  check(groups);
  const std::int64_t cap = weight_units_down(capacity_mb);
  struct Partial {
    double value;
    std::vector<int> choice;
  };
  // Per reachable weight, the best prefixes. Prefixes within a hair of the
  // best are all kept: adding the same suffix can round them into an exact
  // tie, which the final lexicographic rule must then see.
  std::map<std::int64_t, std::vector<Partial>> layer;
  if (cap < 0) return {};
  layer[0].push_back({0.0, {}});
  for (const auto& group : groups) {
    std::map<std::int64_t, std::vector<Partial>> next;
    for (const auto& [w, partials] : layer) {
      for (std::size_t k = 0; k < group.size(); ++k) {
        const std::int64_t nw = w + weight_units_up(group[k].weight_mb);
        if (nw > cap) continue;
        auto& bucket = next[nw];
        for (const Partial& p : partials) {
          Partial q{p.value + group[k].value, p.choice};
          q.choice.push_back(static_cast<int>(k));
          bucket.push_back(std::move(q));
        }
      }
    }
    for (auto& [w, bucket] : next) {
      double top = -std::numeric_limits<double>::infinity();
      for (const Partial& p : bucket) top = std::max(top, p.value);
      const double slack = 1e-9 * std::max(1.0, std::fabs(top));
      std::erase_if(bucket, [&](const Partial& p) { return p.value < top - slack; });
      // Among exact duplicates of value only the lexicographically first
      // prefix can ever win.
      std::sort(bucket.begin(), bucket.end(), [](const Partial& a, const Partial& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.choice < b.choice;
      });
      bucket.erase(std::unique(bucket.begin(), bucket.end(),
                               [](const Partial& a, const Partial& b) { return a.value == b.value; }),
                   bucket.end());
    }
    layer = std::move(next);
  }
  KnapsackResult best;
  for (const auto& [w, partials] : layer) {
    for (const Partial& p : partials) {
      if (better(p.value, w, p.choice, best)) {
        best.feasible = true;
        best.value = p.value;
        best.weight = w;
        best.choice = p.choice;
      }
    }
  }
  return best;
}

KnapsackResult knapsack_solve(const std::vector<KnapsackGroup>& groups, double capacity_mb,
                              std::int64_t enumeration_limit) {
  std::int64_t combos = 1;
  for (const auto& g : groups) {
    combos *= static_cast<std::int64_t>(std::max<std::size_t>(g.size(), 1));
    if (combos > enumeration_limit) return knapsack_dp(groups, capacity_mb);
  }
  return knapsack_enumerate(groups, capacity_mb);
}

}  // namespace edgesim
