#pragma once

// CVaR of a fixed solution under a uniform N-point distribution, and CVaR
// minimization over a binary feasible set.

#include <vector>

#include "wdro/model.hpp"

namespace wdro {

// Ordered-weighted-average weights w with CVaR = sum_i w_i c_(i), where
// c_(1) >= c_(2) >= ... are the sorted costs.
Vector owa_weights(double alpha, int N);

// Indices sorting `costs` in descending order; equal costs keep index order.
std::vector<int> descending_order(const Vector& costs);

double cvar_of_costs(const Vector& costs, double alpha);
double cvar_discrete(const EmpiricalDistribution& dist, const Binary& x, double alpha);

// The same quantity as the optimum of
//   max sum_i c_i p_i  s.t. sum p_i = 1, 0 <= p_i <= 1/(alpha N),
// solved with the simplex code. Kept as an independent check.
double cvar_lp(const EmpiricalDistribution& dist, const Binary& x, double alpha);

// Mixed model  min t + 1/(alpha N) sum u_i  s.t. u_i >= xi_i^T x - t, u >= 0
// over x in X. Variables: x at 0..n-1, then t, then u_1..u_N.
struct CvarModel {
  milp::MixedModel model;
  int t_index = 0;
  int u_offset = 0;
};

CvarModel build_cvar_model(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha);

SolveResult solve_cvar(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha,
                       double gap_tol = 1e-9);

// Deterministic problem under an arbitrary cost vector.
SolveResult solve_linear(const FeasibleSet& problem, const Vector& costs, double gap_tol = 1e-9);

struct HeuristicResult {
  SolveResult solution;
  double ratio_bound = 1.0;
};

// Minimizes the mean cost; a min{N, 1/alpha}-approximation for CVaR.
HeuristicResult mean_heuristic(const FeasibleSet& problem, const EmpiricalDistribution& dist, double alpha,
                               double gap_tol = 1e-9);

// min{N, 1/alpha}: the factor between expectation and CVaR.
double gamma_factor(double alpha, int N);

}  // namespace wdro
