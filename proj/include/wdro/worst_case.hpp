#pragma once

// The adversary: for a fixed solution x, a distribution in the Wasserstein
// ball of radius epsilon around the empirical one that maximizes CVaR. A
// worst N-point distribution moves the realizations by a total of at most
// N * epsilon in the q-norm while staying in the support.

#include <cstdint>
#include <vector>

#include "wdro/model.hpp"
#include "wdro/parallel.hpp"

namespace wdro {

struct WorstCaseCertificate {
  EmpiricalDistribution distribution;
  double value = 0.0;               // CVaR of x under `distribution`
  std::vector<int> active_subset;   // realizations that were moved, ascending
  double budget_used = 0.0;         // sum_i ||xi_i - xihat_i||_q
};

struct AdversaryOptions {
  // Subsets are enumerated while C(N, l) stays within this limit; beyond it
  // the mixed-integer formulation is solved instead.
  std::int64_t enumeration_limit = 200000;
  Execution execution = Execution::kParallel;
  // Relative accuracy for the iterative q = 2 lifts.
  double tolerance = 1e-6;
  int frank_wolfe_iterations = 10000;
  int outer_approximation_iterations = 200;
};

// Bounded supports with alpha = l/N exactly.
WorstCaseCertificate worst_distribution(const Binary& x, const EmpiricalDistribution& dist,
                                        const SupportSet& support, const AmbiguitySpec& spec,
                                        const RiskSpec& risk, const AdversaryOptions& options = {});

struct Lift {
  std::vector<Vector> deltas;  // one n-vector per member of the subset, in subset order
  double gain = 0.0;           // sum of delta_a^T x
};

// max sum_{a in A} delta_a^T x  s.t.  sum_a ||delta_a||_q <= budget,
// xihat_a + delta_a in the box. Only coordinates with x_j = 1 are raised.
Lift inner_lift(const Binary& x, const std::vector<int>& subset, const EmpiricalDistribution& dist,
                const SupportSet& box, double budget, Norm q, const AdversaryOptions& options = {});

// The same maximization over a polytope support, as a linear program (q = 1,
// inf) or by outer approximation of the 2-norm (q = 2). All coordinates may
// move.
Lift polytope_lift(const Binary& x, const std::vector<int>& subset, const EmpiricalDistribution& dist,
                   const SupportSet& support, double budget, Norm q, const AdversaryOptions& options = {});

// Worst-case CVaR for the box [0, b], q = 1 and alpha = l/N:
//   min{ b^T x, CVaR(x) + N epsilon / l }.
double closed_form_box_q1(const Binary& x, const EmpiricalDistribution& dist, const Vector& upper, double epsilon,
                          int l);

// Worst-case CVaR over R^n_+: CVaR(x) + gamma epsilon ||x||_{q'}, with
// gamma = N for alpha < 1/N and 1/alpha otherwise.
double worst_value_unrestricted(const Binary& x, const EmpiricalDistribution& dist, const AmbiguitySpec& spec,
                                double alpha);
double unrestricted_gamma(double alpha, int N);

// A distribution attaining worst_value_unrestricted: the costliest
// realization absorbs the whole budget on the coordinates of x.
WorstCaseCertificate worst_distribution_unrestricted(const Binary& x, const EmpiricalDistribution& dist,
                                                     const AmbiguitySpec& spec, double alpha);

// C(n, k), saturating at INT64_MAX.
std::int64_t binomial(int n, int k);

}  // namespace wdro
