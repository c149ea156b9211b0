#include "edgesim/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgesim/error.hpp"
#include "json_util.hpp"

namespace edgesim {

namespace {

constexpr double kFractionalTol = 1e-6;

// Welford running mean and variance.
struct Moments {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

double reference_factor(double log_h, double value) {
  if (!(value > 0.0)) return std::numeric_limits<double>::infinity();
  const double a = std::sqrt(2.0 * log_h / value) + 1.0 / std::sqrt(2.0);
  return a * a + 0.5;
}

}  // namespace

bool RoundedPlan::routed(int request, int bs) const {
  for (const auto& [n, l] : assigned[static_cast<std::size_t>(request)]) {
    if (n == bs) return true;
  }
  return false;
}

RoundedPlan round_fractional(const Fractional& frac, const ModelCatalog& catalog,
                             const std::vector<Request>& requests, Rng& rng) {
  const int N = frac.bs_count;
  const int M = catalog.size();
  if (frac.model_count != M || frac.a.size() != requests.size()) {
    throw Error(ErrorCode::InvalidFractional, "fractional solution does not match the inputs");
  }
  RoundedPlan out;
  out.cache = CacheState::empty(N, M);
  std::vector<double> weights;
  for (int n = 0; n < N; ++n) {
    for (int m = 0; m < M; ++m) {
      const int levels = catalog.model(m).levels();
      weights.assign(static_cast<std::size_t>(levels), 0.0);
      double total = 0.0;
      for (int l = 0; l < levels; ++l) {
        const double v = frac.x_at(n, m, l);
        if (v < -kFractionalTol || v > 1.0 + kFractionalTol) {
          throw Error(ErrorCode::InvalidFractional, "x outside [0,1]");
        }
        weights[static_cast<std::size_t>(l)] = std::max(v, 0.0);
        total += weights[static_cast<std::size_t>(l)];
      }
      if (std::fabs(total - 1.0) > kFractionalTol) {
        throw Error(ErrorCode::InvalidFractional,
                    "x of BS " + std::to_string(n) + " model " + std::to_string(m) + " sums to " +
                        std::to_string(total));
      }
      out.cache.set(n, m, static_cast<int>(rng.categorical(weights)));
    }
  }
  out.assigned.resize(requests.size());
  double obj = 0.0;
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    const int levels = frac.request_levels[r];
    for (int n = 0; n < N; ++n) {
      for (int l = 0; l < levels; ++l) {
        if (frac.a_at(static_cast<int>(r), n, l) > frac.x_at(n, req.model, l) + kFractionalTol) {
          throw Error(ErrorCode::InvalidFractional, "A exceeds x for request " + std::to_string(r));
        }
      }
      const int l = out.cache.at(n, req.model);
      const double x = frac.x_at(n, req.model, l);
      const double a = frac.a_at(static_cast<int>(r), n, l);
      const double p = x > 0.0 ? std::min(1.0, std::max(a, 0.0) / x) : 0.0;
      if (p > 0.0 && rng.bernoulli(p)) {
        out.assigned[r].push_back({n, l});
        obj += catalog.submodel({req.model, l}).precision;
      }
    }
  }
  out.objective = obj;
  return out;
}

ViolationReport violation_report(const RoundedPlan& plan, const Fractional& frac,
                                 const Network& net, const ModelCatalog& catalog,
                                 const PrevCache& prev, const std::vector<Request>& requests) {
  ViolationReport rep;
  const double log_h = std::log(static_cast<double>(catalog.total_submodels()));
  rep.bound_factor_capacity = 0.0;
  for (int n = 0; n < net.size(); ++n) {
    const double cap = net.memory_mb[static_cast<std::size_t>(n)];
    const double f = plan.cache.used_mb(n, catalog) / cap;
    rep.memory_factor.push_back(f);
    rep.max_memory = std::max(rep.max_memory, f);
    double zeta = 0.0;
    for (int m = 0; m < catalog.size(); ++m) {
      for (int l = 1; l < catalog.model(m).levels(); ++l) {
        zeta += frac.x_at(n, m, l) * catalog.submodel({m, l}).size_mb;
      }
    }
    rep.bound_factor_capacity = std::max(rep.bound_factor_capacity, reference_factor(log_h, zeta));
  }
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    double routes = 0.0, latency = 0.0, load = 0.0;
    for (const auto& [n, l] : plan.assigned[r]) {
      routes += 1.0;
      latency += deadline_coefficient(req, n, l, net, catalog);
      load += load_coefficient(req, n, l, prev, catalog);
    }
    const double df = latency / req.deadline_s;
    const double lf = req.start_s > 0.0 ? load / req.start_s
                                        : (load > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.routing_factor.push_back(routes);
    rep.deadline_factor.push_back(df);
    rep.load_factor.push_back(lf);
    rep.max_routing = std::max(rep.max_routing, routes);
    rep.max_deadline = std::max(rep.max_deadline, df);
    rep.max_load = std::max(rep.max_load, lf);
  }
  const double ratio = frac.objective > 0.0 ? std::sqrt(4.0 * log_h / frac.objective) : 1.0;
  rep.bound_factor_objective = ratio < 1.0 ? (1.0 - ratio) * (1.0 - ratio) : 0.0;
  return rep;
}

std::string ViolationReport::to_json() const {
  auto finite = [](const std::vector<double>& v) {
    detail::json arr = detail::json::array();
    for (double x : v) {
      if (std::isfinite(x)) {
        arr.push_back(x);
      } else {
        arr.push_back(nullptr);
      }
    }
    return arr;
  };
  auto scalar = [](double x) { return std::isfinite(x) ? detail::json(x) : detail::json(nullptr); };
  detail::json j{{"max_memory_factor", scalar(max_memory)},
                 {"max_routing_factor", scalar(max_routing)},
                 {"max_deadline_factor", scalar(max_deadline)},
                 {"max_load_factor", scalar(max_load)},
                 {"reference_capacity_factor", scalar(bound_factor_capacity)},
                 {"reference_objective_ratio", scalar(bound_factor_objective)},
                 {"memory_factor", finite(memory_factor)},
                 {"routing_factor", finite(routing_factor)},
                 {"deadline_factor", finite(deadline_factor)},
                 {"load_factor", finite(load_factor)}};
  return j.dump(2) + "\n";
}

int ExpectationReport::flagged() const {
  int count = 0;
  for (const Row& r : rows) count += r.flagged ? 1 : 0;
  return count;
}

ExpectationReport expectation_check(const Fractional& frac, const Network& net,
                                    const ModelCatalog& catalog, const PrevCache& prev,
                                    const std::vector<Request>& requests, int trials, Rng& rng) {
  const int N = net.size();
  const std::size_t U = requests.size();
  ExpectationReport rep;
  rep.trials = trials;
  rep.fractional_objective = frac.objective;

  // Row layout: memory per BS, then routing / deadline / load per request.
  std::vector<ExpectationReport::Row> rows;
  for (int n = 0; n < N; ++n) {
    double v = 0.0;
    for (int m = 0; m < catalog.size(); ++m) {
      for (int l = 1; l < catalog.model(m).levels(); ++l) v += frac.x_at(n, m, l) * catalog.submodel({m, l}).size_mb;
    }
    rows.push_back({"memory[" + std::to_string(n) + "]", v, 0, 0, false});
  }
  std::vector<std::vector<double>> ddl_coef(U), load_coef(U);
  for (std::size_t r = 0; r < U; ++r) {
    const Request& req = requests[r];
    const int levels = frac.request_levels[r];
    double route = 0.0, ddl = 0.0, load = 0.0;
    ddl_coef[r].resize(static_cast<std::size_t>(N * levels));
    load_coef[r].resize(static_cast<std::size_t>(N * levels));
    for (int n = 0; n < N; ++n) {
      for (int l = 0; l < levels; ++l) {
        const auto k = static_cast<std::size_t>(n * levels + l);
        ddl_coef[r][k] = deadline_coefficient(req, n, l, net, catalog);
        load_coef[r][k] = load_coefficient(req, n, l, prev, catalog);
        const double a = frac.a_at(static_cast<int>(r), n, l);
        route += a;
        ddl += a * ddl_coef[r][k];
        load += a * load_coef[r][k];
      }
    }
    const std::string id = std::to_string(r);
    rows.push_back({"routing[" + id + "]", route, 0, 0, false});
    rows.push_back({"deadline[" + id + "]", ddl, 0, 0, false});
    rows.push_back({"load[" + id + "]", load, 0, 0, false});
  }
  std::vector<Moments> moments(rows.size());
  Moments objective;
  for (int t = 0; t < trials; ++t) {
    const RoundedPlan plan = round_fractional(frac, catalog, requests, rng);
    objective.add(plan.objective);
    std::size_t k = 0;
    for (int n = 0; n < N; ++n) moments[k++].add(plan.cache.used_mb(n, catalog));
    for (std::size_t r = 0; r < U; ++r) {
      const int levels = frac.request_levels[r];
      double route = 0.0, ddl = 0.0, load = 0.0;
      for (const auto& [n, l] : plan.assigned[r]) {
        const auto c = static_cast<std::size_t>(n * levels + l);
        route += 1.0;
        ddl += ddl_coef[r][c];
        load += load_coef[r][c];
      }
      moments[k++].add(route);
      moments[k++].add(ddl);
      moments[k++].add(load);
    }
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].mean = moments[k].mean;
    rows[k].std_error = moments[k].std_error();
    // A tiny absolute slack absorbs floating noise when the variance is zero.
    rows[k].flagged = rows[k].mean > rows[k].fractional + 3.0 * rows[k].std_error + 1e-9;
  }
  rep.rows = std::move(rows);
  rep.mean_objective = objective.mean;
  rep.objective_std_error = objective.std_error();
  return rep;
}

FeasiblePlan repair(const RoundedPlan& plan, const Network& net, const ModelCatalog& catalog,
                    const PrevCache& prev, const std::vector<Request>& requests) {
  const int N = net.size();
  const int M = catalog.size();
  CacheState cache = plan.cache;
  auto assigned = plan.assigned;

  // Routes only make sense to a nonempty cached level.
  for (auto& routes : assigned) {
    std::erase_if(routes, [](const std::pair<int, int>& p) { return p.second == 0; });
  }

  // 1. Memory: downgrade the least beneficial model until the BS fits.
  for (int n = 0; n < N; ++n) {
    const double cap = net.memory_mb[static_cast<std::size_t>(n)];
    double used = cache.used_mb(n, catalog);
    while (used > cap) {
      std::vector<double> benefit(static_cast<std::size_t>(M), 0.0);
      for (std::size_t r = 0; r < requests.size(); ++r) {
        for (const auto& [bs, l] : assigned[r]) {
          if (bs == n) benefit[static_cast<std::size_t>(requests[r].model)] += catalog.submodel({requests[r].model, l}).precision;
        }
      }
      int victim = -1;
      for (int m = 0; m < M; ++m) {
        if (cache.at(n, m) == 0) continue;
        if (victim < 0) {
          victim = m;
          continue;
        }
        const double bm = benefit[static_cast<std::size_t>(m)];
        const double bv = benefit[static_cast<std::size_t>(victim)];
        const double sm = catalog.submodel({m, cache.at(n, m)}).size_mb;
        const double sv = catalog.submodel({victim, cache.at(n, victim)}).size_mb;
        if (bm < bv || (bm == bv && sm > sv)) victim = m;
      }
      const int cur = cache.at(n, victim);
      const double cur_size = catalog.submodel({victim, cur}).size_mb;
      int target = 0;
      for (int l = cur - 1; l >= 1; --l) {
        if (used - cur_size + catalog.submodel({victim, l}).size_mb <= cap) {
          target = l;
          break;
        }
      }
      cache.set(n, victim, target);
      used = cache.used_mb(n, catalog);
      for (std::size_t r = 0; r < requests.size(); ++r) {
        if (requests[r].model != victim) continue;
        auto& routes = assigned[r];
        for (auto& p : routes) {
          if (p.first == n) p.second = target;
        }
        std::erase_if(routes, [](const std::pair<int, int>& p) { return p.second == 0; });
      }
    }
  }

  // 2. Deadline and load-time checks against the deployed cache.
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    std::erase_if(assigned[r], [&](const std::pair<int, int>& p) {
      return deadline_coefficient(req, p.first, p.second, net, catalog) > req.deadline_s ||
             load_coefficient(req, p.first, p.second, prev, catalog) > req.start_s;
    });
  }

  // 3. One BS per request: highest precision, then lowest latency, then id.
  FeasiblePlan out;
  out.cache = cache;
  out.route.assign(requests.size(), kCloud);
  out.precision.assign(requests.size(), 0.0);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    int best = -1;
    double best_p = -1.0, best_t = 0.0;
    for (const auto& [n, l] : assigned[r]) {
      const double p = catalog.submodel({req.model, l}).precision;
      const double t = deadline_coefficient(req, n, l, net, catalog);
      if (best < 0 || p > best_p || (p == best_p && (t < best_t || (t == best_t && n < best)))) {
        best = n;
        best_p = p;
        best_t = t;
      }
    }
    if (best >= 0) {
      out.route[r] = best;
      out.precision[r] = best_p;
    }
  }
  return out;
}

RoundedPlan as_rounded(const FeasiblePlan& plan, const std::vector<Request>& requests) {
  RoundedPlan out;
  out.cache = plan.cache;
  out.assigned.resize(plan.route.size());
  for (std::size_t r = 0; r < plan.route.size(); ++r) {
    const int n = plan.route[r];
    if (n == kCloud) continue;
    out.assigned[r].push_back({n, plan.cache.at(n, requests[r].model)});
  }
  out.objective = plan.objective();
  return out;
}

CocarResult cocar_window(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                         const std::vector<Request>& requests, const CocarOptions& options,
                         Rng& rng) {
  CocarResult res;
  res.fractional = solve_p1lr(net, catalog, prev, requests, options.formulation);
  const int repeats = std::max(1, options.repeats);
  for (int k = 0; k < repeats; ++k) {
    RoundedPlan rounded = round_fractional(res.fractional, catalog, requests, rng);
    FeasiblePlan plan = repair(rounded, net, catalog, prev, requests);
    if (k == 0 || plan.objective() > res.plan.objective()) {
      res.rounded = std::move(rounded);
      res.plan = std::move(plan);
    }
  }
  return res;
}

}  // namespace edgesim
