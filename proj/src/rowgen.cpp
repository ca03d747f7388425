#include "wdro/rowgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "wdro/errors.hpp"
#include "wdro/risk.hpp"

namespace wdro {

Vector generate_cut(const WorstCaseCertificate& certificate, const Binary& x, int l) {
  const auto& dist = certificate.distribution;
  if (l < 1 || l > dist.size()) throw InvalidInput("cut size l must lie in 1..N");
  const std::vector<int> order = descending_order(dist.costs(x));
  Vector zeta(dist.dimension(), 0.0);
  for (int a = 0; a < l; ++a) {
    for (int j = 0; j < dist.dimension(); ++j) zeta[j] += dist[order[a]][j];
  }
  for (double& v : zeta) v /= l;
  return zeta;
}

namespace {

milp::LinearRow cut_row(const Vector& zeta, int z_index) {
  milp::LinearRow row{Vector(z_index + 1, 0.0), milp::Relation::kGreaterEqual, 0.0};
  for (std::size_t j = 0; j < zeta.size(); ++j) row.coeffs[j] = -zeta[j];
  row.coeffs[z_index] = 1.0;
  return row;
}

bool is_duplicate(const Vector& zeta, const std::vector<Cut>& cuts) {
  return std::any_of(cuts.begin(), cuts.end(), [&](const Cut& c) {
    double dist = 0.0;
    for (std::size_t j = 0; j < zeta.size(); ++j) dist = std::max(dist, std::abs(zeta[j] - c.zeta[j]));
    return dist <= 1e-9;
  });
}

double relative_gap(double lower, double upper) {
  return lower > 0.0 ? (upper - lower) / lower : upper - lower;
}

}  // namespace

SolveResult solve_distr_rowgen(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                               const SupportSet& support, const AmbiguitySpec& spec, const RiskSpec& risk,
                               const RowGenOptions& options, RowGenTrace* trace) {
  if (!risk.is_exact_fraction()) throw InvalidInput("row generation needs alpha = l/N exactly");
  if (!support.bounded()) throw InvalidInput("row generation needs a bounded support");
  if (!(options.rel_gap > 0.0)) throw InvalidInput("rel_gap must be positive");
  if (options.max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  if (dist.dimension() != problem.dimension()) throw InvalidInput("distribution and feasible set dimensions differ");
  const auto start = std::chrono::steady_clock::now();
  const int n = problem.dimension();
  const int l = risk.l();

  RowGenTrace local;
  RowGenTrace& log = trace != nullptr ? *trace : local;
  log = RowGenTrace{};

  milp::MixedModel master = problem.base_model();
  const int z = master.lp.add_variable(1.0, 0.0, milp::kInf);
  Vector first(n, 0.0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < n; ++j) first[j] += dist[i][j] / l;
  }
  log.cuts.push_back(Cut{first, 0, {}});
  // z >= empirical CVaR of x, as t + sum_i u_i / l with u_i >= xihat_i^T x - t.
  const int t = master.lp.add_variable(0.0, -milp::kInf, milp::kInf);
  const int u0 = master.lp.num_vars();
  for (int i = 0; i < dist.size(); ++i) master.lp.add_variable(0.0, 0.0, milp::kInf);
  for (int i = 0; i < dist.size(); ++i) {
    Vector row(u0 + i + 1, 0.0);
    for (int j = 0; j < n; ++j) row[j] = -dist[i][j];
    row[t] = 1.0;
    row[u0 + i] = 1.0;
    master.lp.add_row(std::move(row), milp::Relation::kGreaterEqual, 0.0);
  }
  {
    Vector row(u0 + dist.size(), 0.0);
    row[z] = 1.0;
    row[t] = -1.0;
    for (int i = 0; i < dist.size(); ++i) row[u0 + i] = -1.0 / l;
    master.lp.add_row(std::move(row), milp::Relation::kGreaterEqual, 0.0);
  }
  std::vector<milp::LinearRow> pending{cut_row(first, z)};

  milp::BranchOptions branch;
  branch.gap_tol = options.master_gap_tol;
  // Early masters only need a valid bound; the master gap follows the outer gap
  // down to a quarter of the target.
  const double tight = 0.25 * options.rel_gap;
  branch.rel_gap = std::max(tight, 1e-2);
  SolveResult result;
  double lower = -milp::kInf;
  double upper = milp::kInf;
  int stalls = 0;
  std::vector<double> hint;
  log.termination = "max_iter";
  result.status = milp::SolveStatus::kGapReached;

  for (int it = 1; it <= options.max_iter; ++it) {
    const auto report = milp::resolve_with_added_rows(master, std::move(pending), branch,
                                                      hint.empty() ? nullptr : &hint);
    pending.clear();
    result.nodes += report.nodes;
    if (!report.has_solution()) throw SolverFailure("row-generation master produced no solution");
    lower = std::max(lower, std::min(report.bound, report.objective));
    const Binary x = binary_part(report.values, n);

    const auto adv_start = std::chrono::steady_clock::now();
    const WorstCaseCertificate cert = worst_distribution(x, dist, support, spec, risk, options.adversary);
    const double adv_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - adv_start).count();
    if (cert.value < upper) {
      upper = cert.value;
      result.x = x;
    }
    lower = std::min(lower, upper);

    const Vector zeta = generate_cut(cert, x, l);
    const bool duplicate = is_duplicate(zeta, log.cuts);
    const double gap = relative_gap(lower, upper);
    log.iterations.push_back(RowGenIteration{it, lower, upper, gap, x, cert.value, adv_ms, duplicate});
    if (gap <= options.rel_gap) {
      result.status = milp::SolveStatus::kOptimal;
      log.termination = "gap";
      break;
    }
    const bool loose = branch.rel_gap > tight;
    branch.rel_gap = std::clamp(0.2 * gap, tight, std::max(tight, 1e-2));
    if (duplicate && loose) {
      branch.rel_gap = tight;
    } else if (duplicate) {
      if (++stalls >= 3) {
        log.termination = "stalled";
        break;
      }
    } else {
      stalls = 0;
      log.cuts.push_back(Cut{zeta, it, x});
      pending.push_back(cut_row(zeta, z));
    }
    // Keep the incumbent x as a warm start, lifting z above every cut.
    hint = report.values;
    double needed = 0.0;
    for (const auto& c : log.cuts) needed = std::max(needed, dot(c.zeta, Vector(x.begin(), x.end())));
    hint[z] = std::max(hint[z], needed);
  }
  result.objective = upper;
  result.bound = lower;
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_trace_csv(const RowGenTrace& trace, std::ostream& out) {
  out << "iteration,z_lb,z_ub,gap,adversary_ms\n";
  const auto old = out.precision(17);
  for (const auto& it : trace.iterations) {
    out << it.iteration << ',' << it.lower << ',' << it.upper << ',' << it.gap << ',' << it.adversary_ms << '\n';
  }
  out.precision(old);
}

}  // namespace wdro
