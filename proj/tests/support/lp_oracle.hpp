#pragma once

// Brute-force LP reference: enumerate every intersection of n active
// hyperplanes (rows at equality or variables at a bound), keep the feasible
// ones and return the best objective. Only usable for a handful of variables
// with finite bounds.

#include <cmath>
#include <optional>
#include <vector>

#include "edgesim/lp.hpp"
#include "edgesim/rng.hpp"

namespace oracle {

struct Hyperplane {
  std::vector<double> a;
  double b = 0.0;
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                       std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    if (std::fabs(m[piv][c]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

/// Best objective over all feasible vertices, or nullopt when none exists.
inline std::optional<double> vertex_optimum(const edgesim::LpProblem& p, double tol = 1e-7) {
  const int n = p.num_vars();
  std::vector<Hyperplane> planes;
  for (const auto& r : p.rows) {
    Hyperplane h{std::vector<double>(static_cast<std::size_t>(n), 0.0), r.rhs};
    for (std::size_t k = 0; k < r.index.size(); ++k) h.a[static_cast<std::size_t>(r.index[k])] += r.value[k];
    planes.push_back(h);
  }
  for (int j = 0; j < n; ++j) {
    for (double bound : {p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]}) {
      if (!std::isfinite(bound)) continue;
      Hyperplane h{std::vector<double>(static_cast<std::size_t>(n), 0.0), bound};
      h.a[static_cast<std::size_t>(j)] = 1.0;
      planes.push_back(h);
    }
  }
  std::optional<double> best;
  std::vector<int> pick(static_cast<std::size_t>(n));
  const int total = static_cast<int>(planes.size());
  if (total < n) return best;
  for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    for (int i : pick) {
      m.push_back(planes[static_cast<std::size_t>(i)].a);
      rhs.push_back(planes[static_cast<std::size_t>(i)].b);
    }
    if (auto x = solve_square(m, rhs); x && edgesim::max_violation(p, *x) <= tol) {
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += p.objective[static_cast<std::size_t>(j)] * (*x)[static_cast<std::size_t>(j)];
      if (!best || obj > *best) best = obj;
    }
    int k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == total - n + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < n; ++i) pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
  return best;
}

/// Random boxed LP with up to `max_vars` variables and `max_rows` rows. About
/// a third of the rows are built around a random interior point so most
/// instances are feasible; the rest are unconstrained draws.
inline edgesim::LpProblem random_lp(edgesim::Rng& rng, int max_vars = 6, int max_rows = 8) {
  edgesim::LpProblem p;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vars)));
  const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rows)));
  std::vector<double> point;
  for (int j = 0; j < n; ++j) {
    const double lo = rng.bernoulli(0.7) ? 0.0 : rng.uniform(-3.0, 0.0);
    const double hi = lo + rng.uniform(0.5, 5.0);
    p.add_variable(std::round(rng.uniform(-5.0, 5.0) * 100.0) / 100.0, lo, hi);
    point.push_back(rng.uniform(lo, hi));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<int> idx;
    std::vector<double> val;
    double at_point = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!rng.bernoulli(0.7)) continue;
      const double v = std::round(rng.uniform(-4.0, 4.0) * 10.0) / 10.0;
      if (v == 0.0) continue;
      idx.push_back(j);
      val.push_back(v);
      at_point += v * point[static_cast<std::size_t>(j)];
    }
    const double u = rng.uniform();
    const auto rel = u < 0.6 ? edgesim::Relation::LessEqual
                             : u < 0.85 ? edgesim::Relation::GreaterEqual : edgesim::Relation::Equal;
    double rhs;
    if (rel == edgesim::Relation::Equal || rng.bernoulli(0.35)) {
      const double slack = rel == edgesim::Relation::Equal ? 0.0 : rng.uniform(0.0, 2.0);
      rhs = rel == edgesim::Relation::GreaterEqual ? at_point - slack : at_point + slack;
    } else {
      rhs = std::round(rng.uniform(-6.0, 10.0) * 10.0) / 10.0;
    }
    p.add_row(idx, val, rel, rhs);
  }
  return p;
}

}  // namespace oracle
