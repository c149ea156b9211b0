#include "edgesim/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgesim/error.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

namespace {

void check_inputs(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                  const std::vector<Request>& requests) {
  if (prev.bs_count != net.size() || prev.model_count != catalog.size()) {
    throw Error(ErrorCode::InvalidArgument, "previous cache does not match the scenario");
  }
  for (const Request& r : requests) {
    catalog.model(r.model);
    if (r.home < 0 || r.home >= net.size()) {
      throw Error(ErrorCode::InvalidArgument, "request " + std::to_string(r.user) + " has unknown home BS");
    }
  }
}

std::vector<int> offsets(const ModelCatalog& catalog) {
  std::vector<int> out;
  int acc = 0;
  for (const auto& m : catalog.models()) {
    out.push_back(acc);
    acc += m.levels();
  }
  return out;
}

}  // namespace

double deadline_coefficient(const Request& req, int bs, int level, const Network& net,
                            const ModelCatalog& catalog) {
  const double comm = comm_latency(req, bs, net);
  if (level == 0) return comm;
  return comm + infer_latency(catalog.submodel({req.model, level}),
                              net.compute_gflops[static_cast<std::size_t>(bs)]);
}

double load_coefficient(const Request& req, int bs, int level, const PrevCache& prev,
                        const ModelCatalog& catalog) {
  return load_latency({req.model, prev.at(bs, req.model)}, {req.model, level}, catalog);
}

std::size_t p1lr_row_tally(int bs_count, const ModelCatalog& catalog,
                           const std::vector<Request>& requests) {
  const auto n = static_cast<std::size_t>(bs_count);
  std::size_t rows = n * static_cast<std::size_t>(catalog.size()) + n + 3 * requests.size();
  for (const Request& r : requests) rows += n * static_cast<std::size_t>(catalog.model(r.model).levels());
  return rows;
}

P1lr build_p1lr(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                const std::vector<Request>& requests, const FormulationOptions& options) {
  check_inputs(net, catalog, prev, requests);
  const int N = net.size();
  const int M = catalog.size();
  P1lr out;
  VarIndex& idx = out.index;
  LpProblem& lp = out.problem;
  idx.bs_count = N;
  idx.model_offset = offsets(catalog);
  idx.submodel_total = catalog.total_submodels();
  idx.x_count = N * idx.submodel_total;
  for (int j = 0; j < idx.x_count; ++j) lp.add_variable(0.0, 0.0, 1.0);

  const bool presolve = options.presolve;
  idx.a_cols.resize(requests.size());
  idx.request_levels.resize(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    const int levels = catalog.model(req.model).levels();
    idx.request_levels[r] = levels;
    idx.a_cols[r].assign(static_cast<std::size_t>(N * levels), -1);
    bool any = false;
    for (int n = 0; n < N; ++n) {
      for (int l = 0; l < levels; ++l) {
        if (presolve) {
          if (l == 0) continue;
          if (deadline_coefficient(req, n, l, net, catalog) > req.deadline_s) continue;
          if (load_coefficient(req, n, l, prev, catalog) > req.start_s) continue;
        }
        const double p = catalog.submodel({req.model, l}).precision;
        const int col = lp.add_variable(p, 0.0, 1.0);
        idx.a_cols[r][static_cast<std::size_t>(n * levels + l)] = col;
        idx.a_meta.push_back({static_cast<int>(r), n, l});
        any = true;
      }
    }
    if (!any) ++out.pruned_requests;
  }

  // One submodel per (BS, model).
  for (int n = 0; n < N; ++n) {
    for (int m = 0; m < M; ++m) {
      std::vector<int> cols;
      for (int l = 0; l < catalog.model(m).levels(); ++l) cols.push_back(idx.x(n, m, l));
      lp.add_row(cols, std::vector<double>(cols.size(), 1.0), Relation::Equal, 1.0);
    }
  }
  // Memory.
  for (int n = 0; n < N; ++n) {
    std::vector<int> cols;
    std::vector<double> vals;
    for (int m = 0; m < M; ++m) {
      for (int l = 1; l < catalog.model(m).levels(); ++l) {
        cols.push_back(idx.x(n, m, l));
        vals.push_back(catalog.submodel({m, l}).size_mb);
      }
    }
    lp.add_row(cols, vals, Relation::LessEqual, net.memory_mb[static_cast<std::size_t>(n)]);
  }
  // Per request: routed at most once, deadline, load time.
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    const int levels = idx.request_levels[r];
    std::vector<int> cols;
    std::vector<double> ddl, load;
    for (int n = 0; n < N; ++n) {
      for (int l = 0; l < levels; ++l) {
        const int col = idx.a(static_cast<int>(r), n, l);
        if (col < 0) continue;
        cols.push_back(col);
        ddl.push_back(deadline_coefficient(req, n, l, net, catalog));
        load.push_back(load_coefficient(req, n, l, prev, catalog));
      }
    }
    if (presolve && cols.empty()) continue;
    lp.add_row(cols, std::vector<double>(cols.size(), 1.0), Relation::LessEqual, 1.0);
    if (!presolve) {
      lp.add_row(cols, ddl, Relation::LessEqual, req.deadline_s);
      lp.add_row(cols, load, Relation::LessEqual, req.start_s);
    }
  }
  // A <= x.
  for (std::size_t k = 0; k < idx.a_meta.size(); ++k) {
    const auto& meta = idx.a_meta[k];
    const int model = requests[static_cast<std::size_t>(meta.request)].model;
    lp.add_row({idx.x_count + static_cast<int>(k), idx.x(meta.bs, model, meta.level)}, {1.0, -1.0},
               Relation::LessEqual, 0.0);
  }
  return out;
}

bool Fractional::routed(int request, int bs) const {
  const auto r = static_cast<std::size_t>(request);
  const int levels = request_levels[r];
  for (int l = 0; l < levels; ++l) {
    if (a[r][static_cast<std::size_t>(bs * levels + l)] > 0.0) return true;
  }
  return false;
}

Fractional decode(const LpSolution& solution, const VarIndex& index, const ModelCatalog& catalog,
                  const std::vector<Request>& requests) {
  if (solution.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolutionNotOptimal,
                std::string("cannot decode a solution with status ") + to_string(solution.status));
  }
  if (static_cast<int>(solution.primal.size()) != index.num_cols() ||
      index.a_cols.size() != requests.size()) {
    throw Error(ErrorCode::InvalidArgument, "solution does not match the variable index");
  }
  Fractional f;
  f.bs_count = index.bs_count;
  f.model_count = catalog.size();
  f.submodel_total = index.submodel_total;
  f.model_offset = index.model_offset;
  f.request_levels = index.request_levels;
  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  f.x.resize(static_cast<std::size_t>(index.x_count));
  for (int j = 0; j < index.x_count; ++j) f.x[static_cast<std::size_t>(j)] = clamp01(solution.primal[static_cast<std::size_t>(j)]);
  f.a.resize(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    f.a[r].assign(index.a_cols[r].size(), 0.0);
    for (std::size_t k = 0; k < index.a_cols[r].size(); ++k) {
      const int col = index.a_cols[r][k];
      if (col >= 0) f.a[r][k] = clamp01(solution.primal[static_cast<std::size_t>(col)]);
    }
  }
  double obj = 0.0;
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const int levels = f.request_levels[r];
    for (std::size_t k = 0; k < f.a[r].size(); ++k) {
      const int l = static_cast<int>(k) % levels;
      obj += f.a[r][k] * catalog.submodel({requests[r].model, l}).precision;
    }
  }
  f.objective = obj;
  return f;
}

namespace {

Fractional solve_one(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                     const std::vector<Request>& requests, const FormulationOptions& options) {
  P1lr built = build_p1lr(net, catalog, prev, requests, options);
  LpSolution sol = solve(built.problem, options.lp);
  return decode(sol, built.index, catalog, requests);
}

}  // namespace

Fractional solve_p1lr(const Network& net, const ModelCatalog& catalog, const PrevCache& prev,
                      const std::vector<Request>& requests, const FormulationOptions& options) {
  const long columns = static_cast<long>(net.size()) * static_cast<long>(requests.size()) *
                       static_cast<long>(catalog.max_levels());
  if (options.variable_cap <= 0 || columns <= options.variable_cap || requests.size() < 2) {
    return solve_one(net, catalog, prev, requests, options);
  }
  // Shard: random batches, each solved against the full capacities, then a
  // request-weighted average of the cache fractions. Each batch's routing
  // mass is scaled down wherever its own x exceeds the average, so A <= x
  // still holds. This is an approximation of the monolithic optimum.
  const long per_request = static_cast<long>(net.size()) * catalog.max_levels();
  const std::size_t batch_size =
      static_cast<std::size_t>(std::max<long>(1, options.variable_cap / per_request));
  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = Rng::stream(options.seed, Stream::Sharding);
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t s = 0; s < order.size(); s += batch_size) {
    batches.emplace_back(order.begin() + static_cast<long>(s),
                         order.begin() + static_cast<long>(std::min(order.size(), s + batch_size)));
  }
  std::vector<Fractional> parts;
  for (const auto& b : batches) {
    std::vector<Request> sub;
    for (std::size_t r : b) sub.push_back(requests[r]);
    parts.push_back(solve_one(net, catalog, prev, sub, options));
  }

  Fractional f;
  f.bs_count = net.size();
  f.model_count = catalog.size();
  f.submodel_total = catalog.total_submodels();
  f.model_offset = offsets(catalog);
  f.approximate = true;
  f.x.assign(static_cast<std::size_t>(f.bs_count * f.submodel_total), 0.0);
  const double total = static_cast<double>(requests.size());
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const double w = static_cast<double>(batches[b].size()) / total;
    for (std::size_t j = 0; j < f.x.size(); ++j) f.x[j] += w * parts[b].x[j];
  }
  f.request_levels.resize(requests.size());
  f.a.resize(requests.size());
  double obj = 0.0;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    for (std::size_t i = 0; i < batches[b].size(); ++i) {
      const std::size_t r = batches[b][i];
      const Request& req = requests[r];
      const int levels = parts[b].request_levels[i];
      f.request_levels[r] = levels;
      f.a[r] = parts[b].a[i];
      for (int n = 0; n < f.bs_count; ++n) {
        for (int l = 0; l < levels; ++l) {
          double& v = f.a[r][static_cast<std::size_t>(n * levels + l)];
          if (v <= 0.0) continue;
          const double xb = parts[b].x_at(n, req.model, l);
          const double xbar = f.x_at(n, req.model, l);
          if (xb > xbar) v *= xbar / xb;
          v = std::min(v, xbar);
          obj += v * catalog.submodel({req.model, l}).precision;
        }
      }
    }
  }
  f.objective = obj;
  return f;
}

}  // namespace edgesim
