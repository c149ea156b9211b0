#pragma once

#include <limits>
#include <string>
#include <vector>

namespace edgesim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpRow {
  std::vector<int> index;
  std::vector<double> value;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// maximize objective . x  subject to sparse rows and lower <= x <= upper.
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;  // optional; used by the text dump
  std::vector<LpRow> rows;
  std::vector<std::string> row_names;  // optional

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double obj, double lo = 0.0, double hi = kInf, std::string name = {});
  int add_row(std::vector<int> index, std::vector<double> value, Relation rel, double rhs,
              std::string name = {});

  /// Throws MalformedProblem on NaN/inf coefficients, bad indices, lo > hi.
  void validate() const;
  /// CPLEX LP text for cross-checking with external solvers.
  std::string to_lp_format() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;
  double objective = 0.0;
  /// Row multipliers y with reduced cost c_j - sum_i y_i a_ij (Optimal only).
  std::vector<double> row_duals;
  long iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 100;
  long max_iterations = 0;  // 0: automatic
};

/// Bounded-variable primal revised simplex. Dantzig pricing with lowest-index
/// ties, Harris ratio test, and a Bland fallback on long degenerate runs, so
/// identical input yields an identical pivot sequence.
LpSolution solve(const LpProblem& problem, const LpOptions& options = {});

/// Largest absolute violation of any row or bound by `x`.
double max_violation(const LpProblem& problem, const std::vector<double>& x);

/// Weak-duality upper bound on the optimum implied by row multipliers `y`.
/// Returns +inf when `y` is not a valid certificate (wrong sign on an
/// inequality or a nonzero reduced cost on an unbounded variable).
double dual_bound(const LpProblem& problem, const std::vector<double>& y);

}  // namespace edgesim
