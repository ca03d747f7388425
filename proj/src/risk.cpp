#include "wdro/risk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wdro/errors.hpp"

namespace wdro {

Vector owa_weights(double alpha, int N) {
  const RiskBracket bracket = risk_bracket(alpha, N);
  Vector w(N, 0.0);
  if (alpha * N < 1.0 - kFractionTol) {
    w[0] = 1.0;
    return w;
  }
  const int l = bracket.l;
  const double head = 1.0 / (alpha * N);
  for (int i = 0; i < l - 1; ++i) w[i] = head;
  w[l - 1] = std::max(0.0, 1.0 - (l - 1) * head);
  return w;
}

std::vector<int> descending_order(const Vector& costs) {
  std::vector<int> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] > costs[b]; });
  return order;
}

double cvar_of_costs(const Vector& costs, double alpha) {
  const int N = static_cast<int>(costs.size());
  if (N == 0) throw InvalidInput("CVaR of an empty cost vector");
  const Vector w = owa_weights(alpha, N);
  const std::vector<int> order = descending_order(costs);
  double value = 0.0;
  for (int i = 0; i < N && w[i] > 0.0; ++i) value += w[i] * costs[order[i]];
  return value;
}

double cvar_discrete(const EmpiricalDistribution& dist, const Binary& x, double alpha) {
  return cvar_of_costs(dist.costs(x), alpha);
}

double cvar_lp(const EmpiricalDistribution& dist, const Binary& x, double alpha) {
  risk_bracket(alpha, dist.size());
  const Vector costs = dist.costs(x);
  const int N = dist.size();
  const double cap = std::min(1.0, 1.0 / (alpha * N));
  milp::LinearProgram lp;
  for (int i = 0; i < N; ++i) lp.add_variable(-costs[i], 0.0, cap);
  lp.add_row(std::vector<double>(N, 1.0), milp::Relation::kEqual, 1.0);
  const auto report = milp::solve_lp(lp);
  if (report.status != milp::SolveStatus::kOptimal) {
    std::ostringstream msg;
    msg << "CVaR linear program ended with status " << milp::to_string(report.status) << "\n";
    milp::write_lp_text(milp::MixedModel{lp, {}}, msg);
    throw SolverFailure(msg.str());
  }
  return -report.objective;
}

CvarModel build_cvar_model(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha) {
  risk_bracket(alpha, dist.size());
  const int n = problem.dimension();
  if (dist.dimension() != n) throw InvalidInput("distribution and feasible set dimensions differ");
  const int N = dist.size();
  CvarModel cm;
  cm.model = problem.base_model();
  auto& lp = cm.model.lp;
  cm.t_index = lp.add_variable(1.0, -milp::kInf, milp::kInf);
  cm.u_offset = lp.num_vars();
  for (int i = 0; i < N; ++i) lp.add_variable(1.0 / (alpha * N), 0.0, milp::kInf);
  for (int i = 0; i < N; ++i) {
    // u_i + t - xi_i^T x >= 0
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int j = 0; j < n; ++j) row[j] = -dist[i][j];
    row[cm.t_index] = 1.0;
    row[cm.u_offset + i] = 1.0;
    lp.add_row(std::move(row), milp::Relation::kGreaterEqual, 0.0);
  }
  return cm;
}

namespace {

SolveResult finish(const milp::SolveReport& report, int n) {
  SolveResult result;
  result.status = report.status;
  result.bound = report.bound;
  result.nodes = report.nodes;
  result.wall_ms = report.wall_ms;
  if (report.has_solution()) result.x = binary_part(report.values, n);
  return result;
}

}  // namespace

SolveResult solve_cvar(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha,
                       double gap_tol) {
  const CvarModel cm = build_cvar_model(problem, dist, alpha);
  milp::BranchOptions options;
  options.gap_tol = gap_tol;
  const auto report = milp::solve_mixed(cm.model, options);
  if (report.status == milp::SolveStatus::kUnbounded) throw SolverFailure("CVaR model reported unbounded");
  SolveResult result = finish(report, problem.dimension());
  if (result.has_solution()) result.objective = cvar_discrete(dist, result.x, alpha);
  return result;
}

SolveResult solve_linear(const FeasibleSet& problem, const Vector& costs, double gap_tol) {
  const int n = problem.dimension();
  if (static_cast<int>(costs.size()) != n) throw InvalidInput("cost vector has the wrong dimension");
  milp::MixedModel model = problem.base_model();
  for (int j = 0; j < n; ++j) model.lp.objective[j] = costs[j];
  milp::BranchOptions options;
  options.gap_tol = gap_tol;
  const auto report = milp::solve_mixed(model, options);
  SolveResult result = finish(report, n);
  if (result.has_solution()) result.objective = dot(costs, Vector(result.x.begin(), result.x.end()));
  return result;
}

double gamma_factor(double alpha, int N) {
  risk_bracket(alpha, N);
  return std::min(static_cast<double>(N), 1.0 / alpha);
}

HeuristicResult mean_heuristic(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha,
                               double gap_tol) {
  HeuristicResult h;
  h.ratio_bound = gamma_factor(alpha, dist.size());
  h.solution = solve_linear(problem, dist.mean(), gap_tol);
  if (h.solution.has_solution()) h.solution.objective = cvar_discrete(dist, h.solution.x, alpha);
  return h;
}

}  // namespace wdro
