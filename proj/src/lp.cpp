#include "edgesim/lp.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgesim/error.hpp"

namespace edgesim {

int LpProblem::add_variable(double obj, double lo, double hi, std::string name) {
  objective.push_back(obj);
  lower.push_back(lo);
  upper.push_back(hi);
  var_names.push_back(std::move(name));
  return num_vars() - 1;
}

int LpProblem::add_row(std::vector<int> index, std::vector<double> value, Relation rel, double rhs,
                       std::string name) {
  rows.push_back(LpRow{std::move(index), std::move(value), rel, rhs});
  row_names.push_back(std::move(name));
  return num_rows() - 1;
}

void LpProblem::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::MalformedProblem, what); };
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) fail("bound vectors do not match variable count");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) fail("non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      fail("invalid bounds on variable " + std::to_string(j));
    }
    if (lower[j] == kInf || upper[j] == -kInf) fail("empty bound interval");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LpRow& r = rows[i];
    if (r.index.size() != r.value.size()) fail("row " + std::to_string(i) + " index/value mismatch");
    if (!std::isfinite(r.rhs)) fail("non-finite rhs in row " + std::to_string(i));
    for (std::size_t k = 0; k < r.index.size(); ++k) {
      if (r.index[k] < 0 || static_cast<std::size_t>(r.index[k]) >= n) {
        fail("row " + std::to_string(i) + " references unknown variable");
      }
      if (!std::isfinite(r.value[k])) fail("non-finite coefficient in row " + std::to_string(i));
    }
  }
}

std::string LpProblem::to_lp_format() const {
  std::ostringstream out;
  out.precision(17);
  auto var = [&](int j) {
    const auto ju = static_cast<std::size_t>(j);
    if (ju < var_names.size() && !var_names[ju].empty()) return var_names[ju];
    return "x" + std::to_string(j);
  };
  auto term = [&](double c, int j, bool first) {
    std::ostringstream t;
    t.precision(17);
    if (c < 0) {
      t << (first ? "- " : " - ") << -c << ' ' << var(j);
    } else {
      t << (first ? "" : " + ") << c << ' ' << var(j);
    }
    return t.str();
  };
  out << "\\ edgesim LP dump\nMaximize\n obj:";
  bool first = true;
  for (int j = 0; j < num_vars(); ++j) {
    if (objective[static_cast<std::size_t>(j)] == 0.0) continue;
    out << ' ' << term(objective[static_cast<std::size_t>(j)], j, first);
    first = false;
  }
  if (first) out << " 0 " << var(0);
  out << "\nSubject To\n";
  for (int i = 0; i < num_rows(); ++i) {
    const LpRow& r = rows[static_cast<std::size_t>(i)];
    const auto iu = static_cast<std::size_t>(i);
    out << ' ' << (iu < row_names.size() && !row_names[iu].empty() ? row_names[iu] : "r" + std::to_string(i))
        << ':';
    bool f = true;
    for (std::size_t k = 0; k < r.index.size(); ++k) {
      out << ' ' << term(r.value[k], r.index[k], f);
      f = false;
    }
    if (f) out << " 0 " << var(0);
    out << (r.relation == Relation::LessEqual ? " <= " : r.relation == Relation::Equal ? " = " : " >= ")
        << r.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < num_vars(); ++j) {
    const double lo = lower[static_cast<std::size_t>(j)];
    const double hi = upper[static_cast<std::size_t>(j)];
    if (lo == -kInf && hi == kInf) {
      out << ' ' << var(j) << " free\n";
    } else {
      out << ' ' << (lo == -kInf ? std::string("-inf") : [&] {
        std::ostringstream s;
        s.precision(17);
        s << lo;
        return s.str();
      }()) << " <= " << var(j) << " <= ";
      if (hi == kInf) {
        out << "+inf\n";
      } else {
        out << hi << '\n';
      }
    }
  }
  out << "End\n";
  return out.str();
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < p.num_vars(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    worst = std::max({worst, p.lower[ju] - x[ju], x[ju] - p.upper[ju]});
  }
  for (const LpRow& r : p.rows) {
    double act = 0.0;
    for (std::size_t k = 0; k < r.index.size(); ++k) act += r.value[k] * x[static_cast<std::size_t>(r.index[k])];
    switch (r.relation) {
      case Relation::LessEqual: worst = std::max(worst, act - r.rhs); break;
      case Relation::GreaterEqual: worst = std::max(worst, r.rhs - act); break;
      case Relation::Equal: worst = std::max(worst, std::fabs(act - r.rhs)); break;
    }
  }
  return worst;
}

double dual_bound(const LpProblem& p, const std::vector<double>& y) {
  constexpr double kSignTol = 1e-9;
  std::vector<double> reduced(p.objective);
  double bound = 0.0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const LpRow& r = p.rows[i];
    double yi = y[i];
    if (r.relation == Relation::LessEqual && yi < 0) {
      if (yi < -kSignTol) return kInf;
      yi = 0;
    }
    if (r.relation == Relation::GreaterEqual && yi > 0) {
      if (yi > kSignTol) return kInf;
      yi = 0;
    }
    bound += yi * r.rhs;
    for (std::size_t k = 0; k < r.index.size(); ++k) {
      reduced[static_cast<std::size_t>(r.index[k])] -= yi * r.value[k];
    }
  }
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    const double d = reduced[j];
    if (d > 0) {
      if (p.upper[j] == kInf) {
        if (d > kSignTol) return kInf;
        continue;
      }
      bound += d * p.upper[j];
    } else if (d < 0) {
      if (p.lower[j] == -kInf) {
        if (d < -kSignTol) return kInf;
        continue;
      }
      bound += d * p.lower[j];
    }
  }
  return bound;
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vec = Eigen::VectorXd;

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr int kDegenerateStreakForBland = 200;

/// LU of the basis at the last refactorization plus product-form updates.
class BasisFactor {
 public:
  bool factor(const SpMat& basis) {
    etas_.clear();
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    return lu_.info() == Eigen::Success;
  }

  void ftran(Vec& v) const {
    v = lu_.solve(v).eval();
    for (const Eta& e : etas_) {
      const double vp = v[e.pos] / e.pivot;
      v[e.pos] = vp;
      if (vp == 0.0) continue;
      for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * vp;
    }
  }

  void btran(Vec& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->pos];
      for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
      v[it->pos] = s / it->pivot;
    }
    v = lu_.transpose().solve(v).eval();
  }

  void push(int pos, const Vec& alpha) {
    Eta e;
    e.pos = pos;
    e.pivot = alpha[pos];
    for (int i = 0; i < alpha.size(); ++i) {
      if (i != pos && std::fabs(alpha[i]) > kDropTol) {
        e.idx.push_back(i);
        e.val.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
  }

  std::size_t updates() const { return etas_.size(); }

 private:
  struct Eta {
    int pos = 0;
    double pivot = 1.0;
    std::vector<int> idx;
    std::vector<double> val;
  };
  mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

class Simplex {
 public:
  Simplex(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {}

  LpSolution run() {
    setup();
    LpSolution sol;
    const long limit = opt_.max_iterations > 0 ? opt_.max_iterations
                                               : 200L * (static_cast<long>(m_) + n_) + 10000;
    if (num_artificial_ > 0) {
      set_phase_one_costs();
      const Outcome o = iterate(limit);
      if (o == Outcome::IterationLimit) {
        throw Error(ErrorCode::SolutionNotOptimal, "iteration limit in phase 1");
      }
      double infeas = 0.0;
      for (int j = art_begin_; j < total_; ++j) infeas += x_[static_cast<std::size_t>(j)];
      if (infeas > 1e-7) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iterations_;
        return sol;
      }
      for (int j = art_begin_; j < total_; ++j) {
        ub_[static_cast<std::size_t>(j)] = 0.0;
        if (pos_of_[static_cast<std::size_t>(j)] < 0) x_[static_cast<std::size_t>(j)] = 0.0;
      }
    }
    set_phase_two_costs();
    const Outcome o = iterate(limit);
    sol.iterations = iterations_;
    if (o == Outcome::IterationLimit) {
      throw Error(ErrorCode::SolutionNotOptimal, "iteration limit in phase 2");
    }
    if (o == Outcome::Unbounded) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    refactor();
    sol.status = LpStatus::Optimal;
    sol.primal.resize(static_cast<std::size_t>(n_));
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      sol.primal[ju] = std::clamp(x_[ju], p_.lower[ju], p_.upper[ju]);
      obj += p_.objective[ju] * sol.primal[ju];
    }
    sol.objective = obj;
    Vec y = basic_costs();
    factor_.btran(y);
    sol.row_duals.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) sol.row_duals[static_cast<std::size_t>(i)] = y[i] * row_scale_[static_cast<std::size_t>(i)];
    return sol;
  }

 private:
  enum class Outcome { Optimal, Unbounded, IterationLimit };

  // Variables: [0, n) structural, [n, n+m) logical r_i with column -e_i,
  // [n+m, total) artificial with column sign * e_row.
  void setup() {
    n_ = p_.num_vars();
    m_ = p_.num_rows();
    row_scale_.assign(static_cast<std::size_t>(m_), 1.0);
    std::vector<std::vector<std::pair<int, double>>> cols(static_cast<std::size_t>(n_));
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = p_.rows[static_cast<std::size_t>(i)];
      double biggest = 0.0;
      for (double v : r.value) biggest = std::max(biggest, std::fabs(v));
      const double s = biggest > 0.0 ? 1.0 / biggest : 1.0;
      row_scale_[static_cast<std::size_t>(i)] = s;
      for (std::size_t k = 0; k < r.index.size(); ++k) {
        if (r.value[k] != 0.0) cols[static_cast<std::size_t>(r.index[k])].push_back({i, r.value[k] * s});
      }
    }
    col_start_.assign(1, 0);
    for (auto& c : cols) {
      std::sort(c.begin(), c.end());
      // merge duplicate indices
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (!row_idx_.empty() && static_cast<int>(row_idx_.size()) > col_start_.back() &&
            row_idx_.back() == c[k].first) {
          val_.back() += c[k].second;
        } else {
          row_idx_.push_back(c[k].first);
          val_.push_back(c[k].second);
        }
      }
      col_start_.push_back(static_cast<int>(row_idx_.size()));
    }

    lb_.assign(p_.lower.begin(), p_.lower.end());
    ub_.assign(p_.upper.begin(), p_.upper.end());
    x_.assign(static_cast<std::size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (std::isfinite(lb_[ju])) {
        x_[ju] = lb_[ju];
      } else if (std::isfinite(ub_[ju])) {
        x_[ju] = ub_[ju];
      }
    }
    std::vector<double> activity(static_cast<std::size_t>(m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      const double xj = x_[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
        activity[static_cast<std::size_t>(row_idx_[static_cast<std::size_t>(k)])] += val_[static_cast<std::size_t>(k)] * xj;
      }
    }

    head_.assign(static_cast<std::size_t>(m_), -1);
    art_row_.clear();
    art_sign_.clear();
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = p_.rows[static_cast<std::size_t>(i)];
      const double s = row_scale_[static_cast<std::size_t>(i)];
      const double rhs = r.rhs * s;
      double lo = -kInf, hi = kInf;
      if (r.relation == Relation::LessEqual) hi = rhs;
      if (r.relation == Relation::GreaterEqual) lo = rhs;
      if (r.relation == Relation::Equal) lo = hi = rhs;
      lb_.push_back(lo);
      ub_.push_back(hi);
      x_.push_back(activity[static_cast<std::size_t>(i)]);
    }
    art_begin_ = n_ + m_;
    for (int i = 0; i < m_; ++i) {
      const int logical = n_ + i;
      const auto lu = static_cast<std::size_t>(logical);
      const double act = x_[lu];
      if (act >= lb_[lu] - opt_.feasibility_tol && act <= ub_[lu] + opt_.feasibility_tol) {
        head_[static_cast<std::size_t>(i)] = logical;
        continue;
      }
      // Park the logical at the violated bound; an artificial absorbs the gap.
      const double bound = act < lb_[lu] ? lb_[lu] : ub_[lu];
      x_[lu] = bound;
      const double gap = bound - act;  // sign * a = r - A x
      art_row_.push_back(i);
      art_sign_.push_back(gap > 0 ? 1.0 : -1.0);
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      x_.push_back(std::fabs(gap));
      head_[static_cast<std::size_t>(i)] = art_begin_ + static_cast<int>(art_row_.size()) - 1;
    }
    num_artificial_ = static_cast<int>(art_row_.size());
    total_ = art_begin_ + num_artificial_;
    pos_of_.assign(static_cast<std::size_t>(total_), -1);
    for (int i = 0; i < m_; ++i) pos_of_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])] = i;
    cost_.assign(static_cast<std::size_t>(total_), 0.0);
    refactor();
  }

  void set_phase_one_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = art_begin_; j < total_; ++j) cost_[static_cast<std::size_t>(j)] = -1.0;
  }

  void set_phase_two_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] = p_.objective[static_cast<std::size_t>(j)];
  }

  // Scatter column j into a dense vector.
  void load_column(int j, Vec& out) const {
    out.setZero(m_);
    if (j < n_) {
      for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
        out[row_idx_[static_cast<std::size_t>(k)]] = val_[static_cast<std::size_t>(k)];
      }
    } else if (j < art_begin_) {
      out[j - n_] = -1.0;
    } else {
      const auto a = static_cast<std::size_t>(j - art_begin_);
      out[art_row_[a]] = art_sign_[a];
    }
  }

  double column_dot(int j, const Vec& y) const {
    if (j < n_) {
      double s = 0.0;
      for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
        s += val_[static_cast<std::size_t>(k)] * y[row_idx_[static_cast<std::size_t>(k)]];
      }
      return s;
    }
    if (j < art_begin_) return -y[j - n_];
    const auto a = static_cast<std::size_t>(j - art_begin_);
    return art_sign_[a] * y[art_row_[a]];
  }

  void refactor() {
    std::vector<Eigen::Triplet<double, int>> trips;
    for (int pos = 0; pos < m_; ++pos) {
      const int j = head_[static_cast<std::size_t>(pos)];
      if (j < n_) {
        for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
          trips.emplace_back(row_idx_[static_cast<std::size_t>(k)], pos, val_[static_cast<std::size_t>(k)]);
        }
      } else if (j < art_begin_) {
        trips.emplace_back(j - n_, pos, -1.0);
      } else {
        const auto a = static_cast<std::size_t>(j - art_begin_);
        trips.emplace_back(art_row_[a], pos, art_sign_[a]);
      }
    }
    SpMat basis(m_, m_);
    basis.setFromTriplets(trips.begin(), trips.end());
    basis.makeCompressed();
    if (m_ > 0 && !factor_.factor(basis)) {
      throw Error(ErrorCode::SolutionNotOptimal, "singular basis during refactorization");
    }
    recompute_basics();
  }

  // x_B = B^{-1} (-N x_N)
  void recompute_basics() {
    if (m_ == 0) return;
    Vec rhs = Vec::Zero(m_);
    for (int j = 0; j < total_; ++j) {
      if (pos_of_[static_cast<std::size_t>(j)] >= 0) continue;
      const double xj = x_[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      if (j < n_) {
        for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
          rhs[row_idx_[static_cast<std::size_t>(k)]] -= val_[static_cast<std::size_t>(k)] * xj;
        }
      } else if (j < art_begin_) {
        rhs[j - n_] += xj;
      } else {
        const auto a = static_cast<std::size_t>(j - art_begin_);
        rhs[art_row_[a]] -= art_sign_[a] * xj;
      }
    }
    factor_.ftran(rhs);
    for (int pos = 0; pos < m_; ++pos) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(pos)])] = rhs[pos];
  }

  Vec basic_costs() const {
    Vec cb(m_);
    for (int pos = 0; pos < m_; ++pos) cb[pos] = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(pos)])];
    return cb;
  }

  // Entering candidate: +1 to increase, -1 to decrease, 0 if not eligible.
  int direction(int j, double d) const {
    const auto ju = static_cast<std::size_t>(j);
    if (lb_[ju] == ub_[ju]) return 0;
    const double tol = opt_.optimality_tol;
    const bool at_lower = std::isfinite(lb_[ju]) && x_[ju] <= lb_[ju];
    const bool at_upper = std::isfinite(ub_[ju]) && x_[ju] >= ub_[ju];
    if (d > tol && !at_upper) return 1;
    if (d < -tol && !at_lower) return -1;
    return 0;
  }

  Outcome iterate(long limit) {
    Vec y, alpha;
    int degenerate_streak = 0;
    while (true) {
      if (iterations_ >= limit) return Outcome::IterationLimit;
      if (static_cast<int>(factor_.updates()) >= opt_.refactor_interval) refactor();

      y = basic_costs();
      if (m_ > 0) factor_.btran(y);
      const bool bland = degenerate_streak >= kDegenerateStreakForBland;
      int enter = -1, dir = 0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (pos_of_[static_cast<std::size_t>(j)] >= 0) continue;
        const double d = cost_[static_cast<std::size_t>(j)] - column_dot(j, y);
        const int dj = direction(j, d);
        if (dj == 0) continue;
        if (bland) {
          enter = j;
          dir = dj;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          dir = dj;
        }
      }
      if (enter < 0) return Outcome::Optimal;

      load_column(enter, alpha);
      if (m_ > 0) factor_.ftran(alpha);

      const auto eu = static_cast<std::size_t>(enter);
      const double range = ub_[eu] - lb_[eu];
      const double ftol = opt_.feasibility_tol;

      // Harris pass 1: largest step keeping every basic within relaxed bounds.
      double theta_max = kInf;
      for (int pos = 0; pos < m_; ++pos) {
        const double delta = -dir * alpha[pos];
        if (std::fabs(delta) < kPivotTol) continue;
        const auto b = static_cast<std::size_t>(head_[static_cast<std::size_t>(pos)]);
        if (delta < 0 && std::isfinite(lb_[b])) {
          theta_max = std::min(theta_max, (x_[b] - lb_[b] + ftol) / -delta);
        } else if (delta > 0 && std::isfinite(ub_[b])) {
          theta_max = std::min(theta_max, (ub_[b] - x_[b] + ftol) / delta);
        }
      }
      if (theta_max == kInf && !std::isfinite(range)) return Outcome::Unbounded;

      int leave = -1;
      double theta = 0.0;
      if (std::isfinite(range) && range <= theta_max) {
        theta = range;  // bound flip
      } else {
        // Pass 2: among ratios within theta_max, the largest pivot wins.
        double best_pivot = 0.0;
        int best_var = -1;
        for (int pos = 0; pos < m_; ++pos) {
          const double delta = -dir * alpha[pos];
          if (std::fabs(delta) < kPivotTol) continue;
          const auto b = static_cast<std::size_t>(head_[static_cast<std::size_t>(pos)]);
          double ratio;
          if (delta < 0 && std::isfinite(lb_[b])) {
            ratio = (x_[b] - lb_[b]) / -delta;
          } else if (delta > 0 && std::isfinite(ub_[b])) {
            ratio = (ub_[b] - x_[b]) / delta;
          } else {
            continue;
          }
          if (ratio > theta_max) continue;
          const double piv = std::fabs(delta);
          const bool better = bland ? (best_var < 0 || ratio < theta ||
                                       (ratio == theta && head_[static_cast<std::size_t>(pos)] < best_var))
                                    : (piv > best_pivot);
          if (better) {
            best_pivot = piv;
            best_var = head_[static_cast<std::size_t>(pos)];
            leave = pos;
            theta = ratio;
          }
        }
        if (leave < 0) return Outcome::Unbounded;
        theta = std::max(theta, 0.0);
      }

      ++iterations_;
      degenerate_streak = theta <= 1e-12 ? degenerate_streak + 1 : 0;

      x_[eu] += dir * theta;
      for (int pos = 0; pos < m_; ++pos) {
        if (alpha[pos] == 0.0) continue;
        x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(pos)])] -= dir * theta * alpha[pos];
      }
      if (leave < 0) {
        x_[eu] = dir > 0 ? ub_[eu] : lb_[eu];
        continue;
      }
      const int out = head_[static_cast<std::size_t>(leave)];
      const auto ou = static_cast<std::size_t>(out);
      const double delta = -dir * alpha[leave];
      x_[ou] = delta < 0 ? lb_[ou] : ub_[ou];
      pos_of_[ou] = -1;
      head_[static_cast<std::size_t>(leave)] = enter;
      pos_of_[eu] = leave;
      factor_.push(leave, alpha);
    }
  }

  const LpProblem& p_;
  LpOptions opt_;
  int n_ = 0, m_ = 0, art_begin_ = 0, total_ = 0, num_artificial_ = 0;
  long iterations_ = 0;
  std::vector<int> col_start_, row_idx_;
  std::vector<double> val_;
  std::vector<double> row_scale_;
  std::vector<int> art_row_;
  std::vector<double> art_sign_;
  std::vector<double> lb_, ub_, x_, cost_;
  std::vector<int> head_, pos_of_;
  BasisFactor factor_;
};

}  // namespace

LpSolution solve(const LpProblem& problem, const LpOptions& options) {
  problem.validate();
  Simplex s(problem, options);
  return s.run();
}

}  // namespace edgesim
