#include "wdro/unrestricted.hpp"

#include <cmath>
#include <exception>
#include <functional>

#include "wdro/errors.hpp"
#include "wdro/worst_case.hpp"

namespace wdro {

namespace {

milp::SolveReport solve_checked(const milp::MixedModel& model, double gap_tol) {
  milp::BranchOptions options;
  options.gap_tol = gap_tol;
  auto report = milp::solve_mixed(model, options);
  if (report.status == milp::SolveStatus::kUnbounded) throw SolverFailure("robust model reported unbounded");
  return report;
}

SolveResult to_result(const milp::SolveReport& report, int n) {
  SolveResult r;
  r.status = report.status;
  r.objective = report.objective;
  r.bound = report.bound;
  r.nodes = report.nodes;
  r.wall_ms = report.wall_ms;
  if (report.has_solution()) r.x = binary_part(report.values, n);
  return r;
}

void add_cardinality_cap(milp::MixedModel& model, int n, int lambda) {
  Vector row(model.lp.num_vars(), 0.0);
  for (int j = 0; j < n; ++j) row[j] = 1.0;
  model.lp.add_row(std::move(row), milp::Relation::kLessEqual, lambda);
}

using ModelFactory = std::function<milp::MixedModel()>;
using Evaluator = std::function<double(const Binary&)>;

LambdaFamilyReport run_family(const FeasibleSet& problem, const ModelFactory& factory, double scale, Norm q,
                              const Evaluator& evaluate, double gap_tol, Execution execution) {
  const int n = problem.dimension();
  const CardinalityRange range = cardinality_range(problem);
  LambdaFamilyReport family;
  for (int lambda = range.min; lambda <= range.max; ++lambda) family.lambdas.push_back(lambda);
  const int count = static_cast<int>(family.lambdas.size());
  family.per_lambda.resize(count);

  const auto solve_one = [&](int k) {
    const int lambda = family.lambdas[k];
    milp::MixedModel model = factory();
    add_cardinality_cap(model, n, lambda);
    const double constant = lambda == 0 ? 0.0 : std::pow(lambda, dual_exponent(q)) * scale;
    SolveResult r = to_result(solve_checked(model, gap_tol), n);
    r.objective += constant;
    r.bound += constant;
    family.per_lambda[k] = r;
  };
  if (execution == Execution::kSerial) {
    for (int k = 0; k < count; ++k) solve_one(k);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < count; ++k) {
      try {
        solve_one(k);
      } catch (...) {
#pragma omp critical(wdro_family_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  int winner = -1;
  double bound = milp::kInf;
  bool closed = true;
  for (int k = 0; k < count; ++k) {
    const auto& r = family.per_lambda[k];
    if (r.status == milp::SolveStatus::kInfeasible) continue;
    bound = std::min(bound, r.bound);
    if (r.status != milp::SolveStatus::kOptimal) closed = false;
    if (r.has_solution() && (winner < 0 || r.objective < family.per_lambda[winner].objective)) winner = k;
  }
  if (winner < 0) throw SolverFailure("no member of the cardinality family produced a solution");
  family.winning_lambda = family.lambdas[winner];
  family.best = family.per_lambda[winner];
  family.best.status = closed ? milp::SolveStatus::kOptimal : milp::SolveStatus::kGapReached;
  family.best.objective = evaluate(family.best.x);
  family.best.bound = bound;
  return family;
}

}  // namespace

CardinalityRange cardinality_range(const FeasibleSet& problem) {
  const int n = problem.dimension();
  milp::MixedModel model = problem.base_model();
  CardinalityRange range;
  for (double sign : {1.0, -1.0}) {
    for (int j = 0; j < n; ++j) model.lp.objective[j] = sign;
    const auto report = milp::solve_mixed(model);
    if (!report.has_solution()) throw InvalidInput("feasible set is empty");
    const int value = static_cast<int>(std::lround(sign * report.objective));
    (sign > 0 ? range.min : range.max) = value;
  }
  return range;
}

LambdaFamilyReport solve_lambda_family(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                       const AmbiguitySpec& spec, double alpha, double gap_tol, Execution execution) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  const double scale = unrestricted_gamma(alpha, dist.size()) * spec.epsilon;
  return run_family(
      problem, [&] { return build_cvar_model(problem, dist, alpha).model; }, scale, spec.q,
      [&](const Binary& x) { return worst_value_unrestricted(x, dist, spec, alpha); }, gap_tol, execution);
}

SolveResult solve_distr_unrestricted(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                     const AmbiguitySpec& spec, double alpha, double gap_tol, Execution execution) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  const int n = problem.dimension();
  const double scale = unrestricted_gamma(alpha, dist.size()) * spec.epsilon;
  switch (spec.q) {
    case Norm::kL1: {
      SolveResult r = solve_cvar(problem, dist, alpha, gap_tol);
      if (!r.has_solution()) return r;
      const Binary zero(n, 0);
      if (problem.contains(zero)) r.x = zero;
      r.objective = worst_value_unrestricted(r.x, dist, spec, alpha);
      r.bound = problem.contains(zero) ? 0.0 : r.bound + scale;
      return r;
    }
    case Norm::kLInf: {
      CvarModel cm = build_cvar_model(problem, dist, alpha);
      for (int j = 0; j < n; ++j) cm.model.lp.objective[j] += scale;
      SolveResult r = to_result(solve_checked(cm.model, gap_tol), n);
      if (r.has_solution()) r.objective = worst_value_unrestricted(r.x, dist, spec, alpha);
      return r;
    }
    case Norm::kL2:
      return solve_lambda_family(problem, dist, spec, alpha, gap_tol, execution).best;
  }
  throw InvalidInput("unknown norm");
}

SolveResult solve_expectation_unrestricted(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                           const AmbiguitySpec& spec, double gap_tol, Execution execution) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  const int n = problem.dimension();
  if (dist.dimension() != n) throw InvalidInput("distribution and feasible set dimensions differ");
  const Vector mean = dist.mean();
  const auto factory = [&] {
    milp::MixedModel model = problem.base_model();
    for (int j = 0; j < n; ++j) model.lp.objective[j] = mean[j];
    return model;
  };
  const auto evaluate = [&](const Binary& x) { return worst_value_unrestricted(x, dist, spec, 1.0); };
  if (spec.q == Norm::kLInf) {
    milp::MixedModel model = factory();
    for (int j = 0; j < n; ++j) model.lp.objective[j] += spec.epsilon;
    SolveResult r = to_result(solve_checked(model, gap_tol), n);
    if (r.has_solution()) r.objective = evaluate(r.x);
    return r;
  }
  return run_family(problem, factory, spec.epsilon, spec.q, evaluate, gap_tol, execution).best;
}

HeuristicResult gamma_approx_heuristic(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                       const AmbiguitySpec& spec, double alpha, double gap_tol) {
  HeuristicResult h;
  h.ratio_bound = gamma_factor(alpha, dist.size());
  h.solution = solve_expectation_unrestricted(problem, dist, spec, gap_tol);
  if (h.solution.has_solution()) h.solution.objective = worst_value_unrestricted(h.solution.x, dist, spec, alpha);
  return h;
}

SolveResult solve_box_q1_two_solve(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                                   const SupportSet& box, double epsilon, double alpha, double gap_tol,
                                   TwoSolveReport* report) {
  if (box.kind() != SupportKind::kBox) throw InvalidInput("the two-solve method needs a box support");
  const RiskSpec risk(alpha, dist.size());
  if (!risk.is_exact_fraction()) throw InvalidInput("the two-solve method needs alpha = l/N exactly");
  if (!validate_support_membership(dist, box)) throw InvalidInput("samples must lie in the box");
  AmbiguitySpec::make(epsilon, Norm::kL1);

  TwoSolveReport local;
  TwoSolveReport& r = report != nullptr ? *report : local;
  r.cap_solution = solve_linear(problem, box.upper(), gap_tol);
  r.cvar_solution = solve_cvar(problem, dist, alpha, gap_tol);
  if (!r.cap_solution.has_solution() || !r.cvar_solution.has_solution()) {
    throw SolverFailure("one of the two solves produced no solution");
  }
  const auto value = [&](const Binary& x) { return closed_form_box_q1(x, dist, box.upper(), epsilon, risk.l()); };
  r.cap_value = value(r.cap_solution.x);
  r.cvar_value = value(r.cvar_solution.x);
  r.cvar_won = r.cvar_value <= r.cap_value;
  SolveResult out = r.cvar_won ? r.cvar_solution : r.cap_solution;
  out.objective = r.cvar_won ? r.cvar_value : r.cap_value;
  out.status = r.cap_solution.status == milp::SolveStatus::kOptimal &&
                       r.cvar_solution.status == milp::SolveStatus::kOptimal
                   ? milp::SolveStatus::kOptimal
                   : milp::SolveStatus::kGapReached;
  out.bound = std::min(r.cap_solution.bound, r.cvar_solution.bound + dist.size() * epsilon / risk.l());
  out.nodes = r.cap_solution.nodes + r.cvar_solution.nodes;
  out.wall_ms = r.cap_solution.wall_ms + r.cvar_solution.wall_ms;
  return out;
}

}  // namespace wdro
