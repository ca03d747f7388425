#pragma once

// Approximation by distortion: every sample is pulled towards a costly
// support point xi_bar by the fraction 1/c, and the empirical CVaR is
// minimized on the distorted sample.

#include <limits>

#include "wdro/model.hpp"
#include "wdro/risk.hpp"

namespace wdro {

enum class AnchorStrategy {
  kMaxTotal,       // xi_bar maximizes 1^T xi over the support
  kClosestToZeta,  // xi_bar minimizes ||xi - zeta||_q over the support
};

struct DistortionPlan {
  Vector xi_bar;
  double c = 1.0;
  Vector zeta;  // per-coordinate maxima of the support
  EmpiricalDistribution distorted;
};

// c = max(1, max_i l ||xi_bar - xihat_i||_q / (epsilon N)). Needs epsilon > 0
// and a bounded support containing the samples.
DistortionPlan build_plan(const EmpiricalDistribution& dist, const SupportSet& support, const AmbiguitySpec& spec,
                          const RiskSpec& risk, AnchorStrategy strategy = AnchorStrategy::kMaxTotal);

// The same construction with a caller-chosen c >= 1; c = +inf leaves the
// sample unchanged.
DistortionPlan build_plan_with_c(const EmpiricalDistribution& dist, const SupportSet& support, double c,
                                 Norm q = Norm::kL1, AnchorStrategy strategy = AnchorStrategy::kMaxTotal);

Vector anchor_point(const SupportSet& support, Norm q, AnchorStrategy strategy);

struct ApproxResult {
  SolveResult solution;  // objective: CVaR on the distorted sample
  DistortionPlan plan;
  double b = 1.0;        // zeta^T x / xi_bar^T x
  double certified_ratio = milp::kInf;
  bool certified = false;
};

ApproxResult solve_distr_approx(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                const SupportSet& support, const AmbiguitySpec& spec, double alpha,
                                double gap_tol = 1e-9, AnchorStrategy strategy = AnchorStrategy::kMaxTotal);

// Heuristic variant without a ratio certificate.
SolveResult solve_with_custom_c(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                const SupportSet& support, double c, double alpha, double gap_tol = 1e-9);

inline constexpr double kNoDistortion = std::numeric_limits<double>::infinity();

}  // namespace wdro
