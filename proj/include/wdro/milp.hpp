#pragma once

// Dense two-phase bounded simplex and best-first branch-and-bound for mixed
// 0-1 linear programs. All models are minimization problems.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wdro::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearRow {
  std::vector<double> coeffs;  // dense, one entry per variable
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Appends a column; existing rows are padded with a zero coefficient.
  int add_variable(double cost, double lo = 0.0, double hi = kInf);
  // `coeffs` may be shorter than num_vars(); missing entries are zero.
  void add_row(std::vector<double> coeffs, Relation relation, double rhs);

  // Throws InvalidInput on inconsistent sizes, NaN/inf coefficients or
  // crossed bounds.
  void validate() const;
};

struct MixedModel {
  LinearProgram lp;
  std::vector<int> binaries;  // indices of variables restricted to {0,1}

  void validate() const;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kGapReached };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = kInf;  // value of the returned assignment
  double bound = -kInf;     // proven lower bound on the optimum
  std::vector<double> values;
  double abs_gap = kInf;
  double rel_gap = kInf;
  std::int64_t nodes = 0;
  std::int64_t cuts = 0;
  std::int64_t pivots = 0;
  double wall_ms = 0.0;
  // LP only: one dual multiplier per row and one reduced cost per variable,
  // so that objective = sum(rhs * duals) + sum(reduced_cost * value).
  std::vector<double> duals;
  std::vector<double> reduced_costs;

  bool has_solution() const {
    return status == SolveStatus::kOptimal ||
           (status == SolveStatus::kGapReached && !values.empty());
  }
};

struct SimplexOptions {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-7;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
  std::int64_t max_pivots = 200000;
};

struct BranchOptions {
  double gap_tol = 1e-9;  // absolute
  double rel_gap = 0.0;   // relative to |incumbent|; the larger allowance wins
  double integrality_tol = 1e-6;
  std::int64_t max_nodes = 2000000;
  SimplexOptions simplex;
};

SolveReport solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// `hint` is an optional full assignment; when it satisfies the model it seeds
// the incumbent. It never changes the reported optimum.
SolveReport solve_mixed(const MixedModel& model, const BranchOptions& options = {},
                        const std::vector<double>* hint = nullptr);

// Appends `rows` to `model` and re-solves. Equivalent to solving the augmented
// model from scratch; `hint` may carry a repaired previous incumbent.
SolveReport resolve_with_added_rows(MixedModel& model, std::vector<LinearRow> rows,
                                    const BranchOptions& options = {},
                                    const std::vector<double>* hint = nullptr);

// Max row violation / bound violation / integrality violation of `values`.
double max_violation(const MixedModel& model, const std::vector<double>& values);

// CPLEX-style LP text (objective, rows, bounds, binary markers).
void write_lp_text(const MixedModel& model, std::ostream& out);
std::string to_lp_text(const MixedModel& model);

}  // namespace wdro::milp
