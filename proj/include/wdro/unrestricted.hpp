#pragma once

// Exact robust solvers when the support is R^n_+, where the worst-case CVaR
// is CVaR(x) + gamma epsilon ||x||_{q'}, plus the box / q = 1 two-solve
// method.

#include <vector>

#include "wdro/model.hpp"
#include "wdro/parallel.hpp"
#include "wdro/risk.hpp"

namespace wdro {

struct CardinalityRange {
  int min = 0;
  int max = 0;
};

CardinalityRange cardinality_range(const FeasibleSet& problem);

// One solve per lambda in {n_min..n_max} of the risk model with sum x <=
// lambda and the constant lambda^{1/q'} gamma epsilon.
struct LambdaFamilyReport {
  std::vector<int> lambdas;
  std::vector<SolveResult> per_lambda;  // objective includes the constant
  int winning_lambda = 0;
  SolveResult best;                     // objective re-evaluated at x
};

LambdaFamilyReport solve_lambda_family(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                       const AmbiguitySpec& spec, double alpha, double gap_tol = 1e-9,
                                       Execution execution = Execution::kParallel);

// q = 1: CVaR solve plus the constant; q = inf: one model with the linear
// penalty; q = 2: the lambda family.
SolveResult solve_distr_unrestricted(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                     const AmbiguitySpec& spec, double alpha, double gap_tol = 1e-9,
                                     Execution execution = Execution::kParallel);

// alpha = 1: min mean^T x + epsilon ||x||_{q'}.
SolveResult solve_expectation_unrestricted(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                           const AmbiguitySpec& spec, double gap_tol = 1e-9,
                                           Execution execution = Execution::kParallel);

// The expectation minimizer, a min{N, 1/alpha}-approximation for the
// CVaR version. The objective is its worst-case CVaR.
HeuristicResult gamma_approx_heuristic(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                       const AmbiguitySpec& spec, double alpha, double gap_tol = 1e-9);

// Box support, q = 1, alpha = l/N: the better of argmin b^T x and
// argmin CVaR(x) under min{b^T x, CVaR(x) + N epsilon / l}; ties go to the
// CVaR minimizer.
struct TwoSolveReport {
  SolveResult cap_solution;   // argmin b^T x
  SolveResult cvar_solution;  // argmin empirical CVaR
  double cap_value = 0.0;
  double cvar_value = 0.0;
  bool cvar_won = true;
};

SolveResult solve_box_q1_two_solve(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                   const SupportSet& box, double epsilon, double alpha, double gap_tol = 1e-9,
                                   TwoSolveReport* report = nullptr);

}  // namespace wdro
