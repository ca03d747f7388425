#include "wdro/distort.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wdro/errors.hpp"

namespace wdro {

namespace {

// Adds xi variables 0..n-1 constrained to the support.
milp::LinearProgram support_program(const SupportSet& support) {
  milp::LinearProgram lp;
  for (int j = 0; j < support.dimension(); ++j) lp.add_variable(0.0);
  support.constrain(lp, 0);
  return lp;
}

double solve_or_throw(const milp::LinearProgram& lp, Vector* values = nullptr) {
  const auto report = milp::solve_lp(lp);
  if (report.status != milp::SolveStatus::kOptimal) {
    throw SolverFailure(std::string("support program ended with status ") + milp::to_string(report.status));
  }
  if (values != nullptr) values->assign(report.values.begin(), report.values.begin() + lp.num_vars());
  return report.objective;
}

// Among the optimal points of the current program, the lexicographically
// largest one in the first n variables.
Vector lexicographic_max(milp::LinearProgram lp, int n) {
  const Vector objective = lp.objective;
  const double best = solve_or_throw(lp);
  lp.add_row(objective, milp::Relation::kLessEqual, best + 1e-9 * (1.0 + std::abs(best)));
  Vector point;
  for (int j = 0; j < n; ++j) {
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    lp.objective[j] = -1.0;
    const double v = -solve_or_throw(lp, &point);
    Vector row(lp.num_vars(), 0.0);
    row[j] = 1.0;
    lp.add_row(std::move(row), milp::Relation::kGreaterEqual, v - 1e-9 * (1.0 + std::abs(v)));
  }
  std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
  solve_or_throw(lp, &point);
  point.resize(n);
  return point;
}

Vector max_total(const SupportSet& support) {
  if (support.kind() == SupportKind::kBox) return support.upper();
  milp::LinearProgram lp = support_program(support);
  std::fill(lp.objective.begin(), lp.objective.end(), -1.0);
  return lexicographic_max(lp, support.dimension());
}

// min ||xi - zeta||_2^2 over the support by conditional gradients with an LP
// oracle and exact line search.
Vector closest_l2(const SupportSet& support, const Vector& zeta) {
  const int n = support.dimension();
  milp::LinearProgram lp = support_program(support);
  Vector xi = max_total(support);
  for (int it = 0; it < 10000; ++it) {
    Vector grad(n);
    for (int j = 0; j < n; ++j) grad[j] = 2.0 * (xi[j] - zeta[j]);
    lp.objective = grad;
    Vector s;
    solve_or_throw(lp, &s);
    Vector d(n);
    double gap = 0.0, dd = 0.0, gd = 0.0;
    for (int j = 0; j < n; ++j) {
      d[j] = s[j] - xi[j];
      gap -= grad[j] * d[j];
      dd += d[j] * d[j];
      gd += grad[j] * d[j];
    }
    double f = 0.0;
    for (int j = 0; j < n; ++j) f += (xi[j] - zeta[j]) * (xi[j] - zeta[j]);
    if (gap <= 1e-9 * (1.0 + f) || dd == 0.0) break;
    const double step = std::clamp(-gd / (2.0 * dd), 0.0, 1.0);
    for (int j = 0; j < n; ++j) xi[j] += step * d[j];
  }
  return xi;
}

Vector closest_to_zeta(const SupportSet& support, Norm q) {
  const Vector& zeta = support.upper();
  if (support.kind() == SupportKind::kBox || q == Norm::kL1) return max_total(support);
  if (q == Norm::kL2) return closest_l2(support, zeta);
  // min s  s.t.  zeta_j - xi_j <= s, then the 1^T maximizer among optima.
  const int n = support.dimension();
  milp::LinearProgram lp = support_program(support);
  const int s = lp.add_variable(1.0);
  for (int j = 0; j < n; ++j) {
    Vector row(lp.num_vars(), 0.0);
    row[j] = 1.0;
    row[s] = 1.0;
    lp.add_row(std::move(row), milp::Relation::kGreaterEqual, zeta[j]);
  }
  const double best = solve_or_throw(lp);
  Vector cap(lp.num_vars(), 0.0);
  cap[s] = 1.0;
  lp.add_row(std::move(cap), milp::Relation::kLessEqual, best + 1e-9 * (1.0 + best));
  std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
  for (int j = 0; j < n; ++j) lp.objective[j] = -1.0;
  return lexicographic_max(lp, n);
}

EmpiricalDistribution distort(const EmpiricalDistribution& dist, const Vector& anchor, double c) {
  if (std::isinf(c)) return dist;
  std::vector<Vector> moved = dist.realizations();
  for (auto& xi : moved) {
    for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = std::max(0.0, xi[j] + (anchor[j] - xi[j]) / c);
  }
  return EmpiricalDistribution(std::move(moved));
}

void check_support(const EmpiricalDistribution& dist, const SupportSet& support) {
  if (!support.bounded()) throw InvalidInput("distortion needs a bounded support");
  if (!validate_support_membership(dist, support)) throw InvalidInput("samples must lie in the support");
}

}  // namespace

Vector anchor_point(const SupportSet& support, Norm q, AnchorStrategy strategy) {
  if (!support.bounded()) throw InvalidInput("distortion needs a bounded support");
  return strategy == AnchorStrategy::kMaxTotal ? max_total(support) : closest_to_zeta(support, q);
}

DistortionPlan build_plan(const EmpiricalDistribution& dist, const SupportSet& support, const AmbiguitySpec& spec,
                          const RiskSpec& risk, AnchorStrategy strategy) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  if (spec.epsilon <= 0.0) {
    throw InvalidInput("distortion needs epsilon > 0; for epsilon = 0 minimize the empirical CVaR directly");
  }
  if (risk.sample_size() != dist.size()) throw InvalidInput("risk spec and distribution disagree on N");
  check_support(dist, support);
  const Vector anchor = anchor_point(support, spec.q, strategy);
  double c = 1.0;
  for (const auto& xi : dist.realizations()) {
    Vector diff(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) diff[j] = anchor[j] - xi[j];
    c = std::max(c, risk.l() * norm(diff, spec.q) / (spec.epsilon * dist.size()));
  }
  return DistortionPlan{anchor, c, support.upper(), distort(dist, anchor, c)};
}

DistortionPlan build_plan_with_c(const EmpiricalDistribution& dist, const SupportSet& support, double c, Norm q,
                                 AnchorStrategy strategy) {
  if (!(c >= 1.0)) throw InvalidInput("c must be at least 1");
  check_support(dist, support);
  const Vector anchor = anchor_point(support, q, strategy);
  return DistortionPlan{anchor, c, support.upper(), distort(dist, anchor, c)};
}

ApproxResult solve_distr_approx(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                const SupportSet& support, const AmbiguitySpec& spec, double alpha, double gap_tol,
                                AnchorStrategy strategy) {
  ApproxResult out{SolveResult{}, build_plan(dist, support, spec, RiskSpec(alpha, dist.size()), strategy)};
  out.solution = solve_cvar(problem, out.plan.distorted, alpha, gap_tol);
  if (!out.solution.has_solution()) return out;
  const Vector x(out.solution.x.begin(), out.solution.x.end());
  const double anchored = dot(out.plan.xi_bar, x);
  const double capped = dot(out.plan.zeta, x);
  if (support.kind() == SupportKind::kBox) {
    out.b = 1.0;
    out.certified = true;
  } else if (anchored > 0.0) {
    out.b = std::max(1.0, capped / anchored);
    out.certified = true;
  } else {
    out.b = milp::kInf;
  }
  out.certified_ratio = out.certified ? out.b * out.plan.c : milp::kInf;
  return out;
}

SolveResult solve_with_custom_c(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                const SupportSet& support, double c, double alpha, double gap_tol) {
  const DistortionPlan plan = build_plan_with_c(dist, support, c);
  return solve_cvar(problem, plan.distorted, alpha, gap_tol);
}

}  // namespace wdro
