#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "worst_case_internal.hpp"
#include "wdro/errors.hpp"

namespace wdro {
namespace detail {

std::vector<int> support_of(const Binary& x) {
  std::vector<int> coords;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (x[j] != 0) coords.push_back(j);
  }
  return coords;
}

HeadroomRow make_headroom_row(const Vector& xihat, const Vector& upper, const std::vector<int>& coords) {
  HeadroomRow row;
  for (int j : coords) {
    row.base += xihat[j];
    const double h = std::max(0.0, upper[j] - xihat[j]);
    row.headroom.push_back(h);
    if (h > 0.0) row.sorted.push_back(h);
  }
  std::sort(row.sorted.begin(), row.sorted.end());
  row.prefix.assign(row.sorted.size() + 1, 0.0);
  row.prefix_sq.assign(row.sorted.size() + 1, 0.0);
  for (std::size_t m = 0; m < row.sorted.size(); ++m) {
    row.prefix[m + 1] = row.prefix[m] + row.sorted[m];
    row.prefix_sq[m + 1] = row.prefix_sq[m] + row.sorted[m] * row.sorted[m];
  }
  row.total = row.prefix.back();
  row.radius = std::sqrt(row.prefix_sq.back());
  return row;
}

Allocation allocate_linf(const std::vector<const HeadroomRow*>& rows, double budget) {
  // Each g_a(t) = sum_j min(t, h_aj) is piecewise linear and concave; filling
  // the steepest pieces first is optimal.
  struct Piece {
    int slope;
    int member;
    int order;
    double length;
  };
  std::vector<Piece> pieces;
  for (int a = 0; a < static_cast<int>(rows.size()); ++a) {
    const auto& s = rows[a]->sorted;
    const int k = static_cast<int>(s.size());
    double prev = 0.0;
    for (int m = 0; m < k; ++m) {
      if (s[m] > prev) pieces.push_back(Piece{k - m, a, m, s[m] - prev});
      prev = s[m];
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) {
    return std::tie(q.slope, p.member, p.order) < std::tie(p.slope, q.member, q.order);
  });
  Allocation out;
  out.t.assign(rows.size(), 0.0);
  double remaining = budget;
  for (const auto& p : pieces) {
    if (remaining <= 0.0) break;
    const double step = std::min(p.length, remaining);
    out.t[p.member] += step;
    out.gain += p.slope * step;
    remaining -= step;
  }
  return out;
}

L2Point l2_gain(const HeadroomRow& row, double t) {
  const int k = static_cast<int>(row.sorted.size());
  L2Point p;
  if (k == 0) return p;
  if (t >= row.radius) {
    p.value = row.total;
    p.slope = 0.0;
    p.level = row.sorted.back();
    return p;
  }
  if (t <= 0.0) {
    p.slope = std::sqrt(static_cast<double>(k));
    return p;
  }
  const double t2 = t * t;
  int m = 0;
  // Smallest m with t^2 <= S2_m + (k - m) h_(m+1)^2, i.e. lambda <= h_(m+1).
  while (m < k - 1 && row.prefix_sq[m] + (k - m) * row.sorted[m] * row.sorted[m] < t2) ++m;
  const double level = std::sqrt(std::max(0.0, (t2 - row.prefix_sq[m]) / (k - m)));
  p.level = level;
  p.value = row.prefix[m] + (k - m) * level;
  p.slope = level > 0.0 ? t / level : std::sqrt(static_cast<double>(k - m));
  return p;
}

namespace {

// Linear maximization oracle over {0 <= s_a <= cap_a, sum s <= budget}.
Vector fill_by_gradient(const Vector& grad, const Vector& cap, double budget) {
  std::vector<int> order(grad.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return grad[a] > grad[b]; });
  Vector s(grad.size(), 0.0);
  double remaining = budget;
  for (int a : order) {
    if (grad[a] <= 0.0 || remaining <= 0.0) break;
    s[a] = std::min(cap[a], remaining);
    remaining -= s[a];
  }
  return s;
}

}  // namespace

Allocation allocate_l2(const std::vector<const HeadroomRow*>& rows, double budget, double tolerance,
                       int max_iterations) {
  const int L = static_cast<int>(rows.size());
  Vector cap(L);
  double total_cap = 0.0;
  for (int a = 0; a < L; ++a) total_cap += cap[a] = rows[a]->radius;
  Allocation out;
  if (total_cap <= budget) {
    out.t = cap;
    for (const auto* r : rows) out.gain += r->total;
    return out;
  }
  const auto value_at = [&](const Vector& t) {
    double v = 0.0;
    for (int a = 0; a < L; ++a) v += l2_gain(*rows[a], t[a]).value;
    return v;
  };
  Vector grad(L);
  for (int a = 0; a < L; ++a) grad[a] = l2_gain(*rows[a], 0.0).slope;
  Vector t = fill_by_gradient(grad, cap, budget);
  for (int it = 0; it < max_iterations; ++it) {
    for (int a = 0; a < L; ++a) grad[a] = l2_gain(*rows[a], t[a]).slope;
    const Vector s = fill_by_gradient(grad, cap, budget);
    double gap = 0.0;
    for (int a = 0; a < L; ++a) gap += grad[a] * (s[a] - t[a]);
    const double value = value_at(t);
    if (gap <= tolerance * (1.0 + std::abs(value))) break;
    // Exact line search on the concave restriction to the segment [t, s].
    const auto derivative = [&](double step) {
      double d = 0.0;
      for (int a = 0; a < L; ++a) d += l2_gain(*rows[a], t[a] + step * (s[a] - t[a])).slope * (s[a] - t[a]);
      return d;
    };
    double step = 1.0;
    if (derivative(1.0) < 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (derivative(mid) > 0.0 ? lo : hi) = mid;
      }
      step = 0.5 * (lo + hi);
    }
    for (int a = 0; a < L; ++a) t[a] += step * (s[a] - t[a]);
  }
  out.t = t;
  out.gain = value_at(t);
  return out;
}

namespace {

// Adversary program over a set of members. Each member a carries
// displacement variables delta_a (xi_a = xihat_a + delta_a) and, for q != 1
// or polytopes, norm variables. Without selection the objective is the gain
// sum_a x^T delta_a; with selection it is (1/l) sum_i p_i with
// p_i <= xi_i^T x and p_i <= M y_i, sum y = l.
struct AdversaryProgram {
  milp::MixedModel model;
  std::vector<std::vector<int>> delta;  // [member][j], -1 when fixed at 0
  std::vector<int> norm_var;            // [member], -1 for q = 1
  std::vector<int> y;
  std::vector<int> p;
};

AdversaryProgram build_program(const Binary& x, const std::vector<int>& members, const EmpiricalDistribution& dist,
                               const SupportSet& support, double budget, Norm q, int select_l) {
  const int n = dist.dimension();
  const bool box = support.kind() == SupportKind::kBox;
  AdversaryProgram ap;
  auto& lp = ap.model.lp;
  std::vector<int> budget_terms;
  std::vector<milp::LinearRow> pending;

  for (int i : members) {
    const Vector& xihat = dist[i];
    std::vector<int> vars(n, -1);
    for (int j = 0; j < n; ++j) {
      if (box && x[j] == 0) continue;
      const double lo = box ? 0.0 : std::min(0.0, support.lower()[j] - xihat[j]);
      const double hi = std::max(0.0, support.upper()[j] - xihat[j]);
      vars[j] = lp.add_variable(0.0, lo, hi);
    }
    int norm_var = -1;
    if (q == Norm::kL1 && box) {
      for (int j = 0; j < n; ++j) {
        if (vars[j] >= 0) budget_terms.push_back(vars[j]);
      }
    } else if (q == Norm::kL1) {
      for (int j = 0; j < n; ++j) {
        const int d = lp.add_variable(0.0);
        budget_terms.push_back(d);
        for (double sign : {1.0, -1.0}) {
          milp::LinearRow row{{}, milp::Relation::kGreaterEqual, 0.0};
          row.coeffs.assign(d + 1, 0.0);
          row.coeffs[d] = 1.0;
          row.coeffs[vars[j]] = -sign;
          pending.push_back(std::move(row));
        }
      }
    } else {
      norm_var = lp.add_variable(0.0);
      budget_terms.push_back(norm_var);
      for (int j = 0; j < n; ++j) {
        if (vars[j] < 0) continue;
        for (double sign : box ? std::vector<double>{1.0} : std::vector<double>{1.0, -1.0}) {
          milp::LinearRow row{{}, milp::Relation::kGreaterEqual, 0.0};
          row.coeffs.assign(std::max(norm_var, vars[j]) + 1, 0.0);
          row.coeffs[norm_var] = 1.0;
          row.coeffs[vars[j]] = -sign;
          pending.push_back(std::move(row));
        }
      }
    }
    if (!box) {
      for (const auto& h : support.halfspaces()) {
        milp::LinearRow row{{}, milp::Relation::kLessEqual, h.offset - dot(h.normal, xihat)};
        row.coeffs.assign(lp.num_vars(), 0.0);
        for (int j = 0; j < n; ++j) row.coeffs[vars[j]] = h.normal[j];
        pending.push_back(std::move(row));
      }
    }
    ap.delta.push_back(std::move(vars));
    ap.norm_var.push_back(norm_var);
  }

  if (select_l > 0) {
    double big_m = 0.0;
    for (int j = 0; j < n; ++j) big_m += x[j] * support.upper()[j];
    for (std::size_t a = 0; a < members.size(); ++a) {
      ap.y.push_back(lp.add_variable(0.0, 0.0, 1.0));
      ap.model.binaries.push_back(ap.y.back());
      ap.p.push_back(lp.add_variable(-1.0 / select_l, 0.0, big_m));
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      milp::LinearRow cost_cap{Vector(lp.num_vars(), 0.0), milp::Relation::kLessEqual,
                               cost_of(dist[members[a]], x)};
      cost_cap.coeffs[ap.p[a]] = 1.0;
      for (int j = 0; j < n; ++j) {
        if (ap.delta[a][j] >= 0 && x[j] != 0) cost_cap.coeffs[ap.delta[a][j]] = -1.0;
      }
      pending.push_back(std::move(cost_cap));
      milp::LinearRow switch_row{Vector(lp.num_vars(), 0.0), milp::Relation::kLessEqual, 0.0};
      switch_row.coeffs[ap.p[a]] = 1.0;
      switch_row.coeffs[ap.y[a]] = -big_m;
      pending.push_back(std::move(switch_row));
    }
    milp::LinearRow count{Vector(lp.num_vars(), 0.0), milp::Relation::kEqual, static_cast<double>(select_l)};
    for (int v : ap.y) count.coeffs[v] = 1.0;
    pending.push_back(std::move(count));
  } else {
    for (const auto& vars : ap.delta) {
      for (int j = 0; j < n; ++j) {
        if (vars[j] >= 0 && x[j] != 0) lp.objective[vars[j]] = -1.0;
      }
    }
  }

  for (auto& row : pending) lp.add_row(std::move(row.coeffs), row.relation, row.rhs);
  Vector budget_row(lp.num_vars(), 0.0);
  for (int v : budget_terms) budget_row[v] = 1.0;
  lp.add_row(std::move(budget_row), milp::Relation::kLessEqual, budget);
  return ap;
}

Vector member_delta(const AdversaryProgram& ap, int a, const Vector& values, int n) {
  Vector d(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (ap.delta[a][j] >= 0) d[j] = values[ap.delta[a][j]];
  }
  return d;
}

milp::SolveReport solve_program(const AdversaryProgram& ap) {
  auto report = ap.model.binaries.empty() ? milp::solve_lp(ap.model.lp) : milp::solve_mixed(ap.model);
  if (report.status != milp::SolveStatus::kOptimal && !report.has_solution()) {
    throw SolverFailure(std::string("adversary program ended with status ") + milp::to_string(report.status));
  }
  return report;
}

struct Candidate {
  std::vector<int> chosen;       // member positions
  std::vector<Vector> deltas;    // per chosen member
};

// Solves the program; for q = 2 the norm constraint is approximated from
// outside by tangent cuts and the answer is scaled back into the ball.
Candidate solve_with_norm_cuts(AdversaryProgram& ap, const Binary& x, const std::vector<int>& members,
                               const EmpiricalDistribution& dist, double budget, Norm q,
                               const AdversaryOptions& options) {
  const int n = dist.dimension();
  const bool selecting = !ap.y.empty();
  const int iterations = q == Norm::kL2 ? options.outer_approximation_iterations : 1;
  Candidate best;
  double best_value = -milp::kInf;
  for (int it = 0; it < iterations; ++it) {
    const auto report = solve_program(ap);
    const double upper = -report.objective;
    std::vector<int> chosen;
    for (int a = 0; a < static_cast<int>(members.size()); ++a) {
      if (!selecting || report.values[ap.y[a]] > 0.5) chosen.push_back(a);
    }
    std::vector<Vector> deltas;
    double used = 0.0;
    for (int a : chosen) {
      deltas.push_back(member_delta(ap, a, report.values, n));
      used += norm(deltas.back(), q);
    }
    const double scale = used > budget && used > 0.0 ? budget / used : 1.0;
    double value = 0.0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      for (double& d : deltas[k]) d *= scale;
      value += cost_of(deltas[k], x) + (selecting ? cost_of(dist[members[chosen[k]]], x) : 0.0);
    }
    if (selecting) value /= static_cast<double>(chosen.size());
    if (value > best_value) {
      best_value = value;
      best = Candidate{chosen, deltas};
    }
    if (q != Norm::kL2 || upper - best_value <= options.tolerance * (1.0 + std::abs(upper))) break;
    bool added = false;
    for (int a = 0; a < static_cast<int>(members.size()); ++a) {
      const Vector d = member_delta(ap, a, report.values, n);
      const double len = norm(d, Norm::kL2);
      if (len <= report.values[ap.norm_var[a]] + 1e-12 || len == 0.0) continue;
      Vector row(ap.model.lp.num_vars(), 0.0);
      row[ap.norm_var[a]] = 1.0;
      for (int j = 0; j < n; ++j) {
        if (ap.delta[a][j] >= 0) row[ap.delta[a][j]] = -d[j] / len;
      }
      ap.model.lp.add_row(std::move(row), milp::Relation::kGreaterEqual, 0.0);
      added = true;
    }
    if (!added) break;
  }
  return best;
}

}  // namespace

SelectionResult solve_selection_program(const Binary& x, const EmpiricalDistribution& dist,
                                        const SupportSet& support, double budget, Norm q, int l,
                                        const AdversaryOptions& options) {
  std::vector<int> members(dist.size());
  std::iota(members.begin(), members.end(), 0);
  AdversaryProgram ap = build_program(x, members, dist, support, budget, q, l);
  const Candidate c = solve_with_norm_cuts(ap, x, members, dist, budget, q, options);
  SelectionResult out;
  for (std::size_t k = 0; k < c.chosen.size(); ++k) out.subset.push_back(members[c.chosen[k]]);
  out.deltas = c.deltas;
  return out;
}

}  // namespace detail

Lift inner_lift(const Binary& x, const std::vector<int>& subset, const EmpiricalDistribution& dist,
                const SupportSet& box, double budget, Norm q, const AdversaryOptions& options) {
  if (box.kind() != SupportKind::kBox) throw InvalidInput("inner_lift needs a box support");
  if (!(budget >= 0.0)) throw InvalidInput("lift budget must be nonnegative");
  const int n = dist.dimension();
  const auto coords = detail::support_of(x);
  std::vector<detail::HeadroomRow> rows;
  for (int i : subset) rows.push_back(detail::make_headroom_row(dist[i], box.upper(), coords));

  Lift lift;
  lift.deltas.assign(subset.size(), Vector(n, 0.0));
  if (coords.empty()) return lift;

  if (q == Norm::kL1) {
    double remaining = budget;
    for (std::size_t a = 0; a < rows.size() && remaining > 0.0; ++a) {
      for (std::size_t k = 0; k < coords.size() && remaining > 0.0; ++k) {
        const double step = std::min(rows[a].headroom[k], remaining);
        lift.deltas[a][coords[k]] = step;
        lift.gain += step;
        remaining -= step;
      }
    }
    return lift;
  }

  std::vector<const detail::HeadroomRow*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  const detail::Allocation alloc =
      q == Norm::kLInf ? detail::allocate_linf(ptrs, budget)
                       : detail::allocate_l2(ptrs, budget, options.tolerance, options.frank_wolfe_iterations);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const double cap = q == Norm::kLInf ? alloc.t[a] : detail::l2_gain(rows[a], alloc.t[a]).level;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const double step = std::min(rows[a].headroom[k], cap);
      lift.deltas[a][coords[k]] = step;
      lift.gain += step;
    }
  }
  return lift;
}

Lift polytope_lift(const Binary& x, const std::vector<int>& subset, const EmpiricalDistribution& dist,
                   const SupportSet& support, double budget, Norm q, const AdversaryOptions& options) {
  if (!support.bounded()) throw InvalidInput("the lift needs a bounded support");
  if (!(budget >= 0.0)) throw InvalidInput("lift budget must be nonnegative");
  auto ap = detail::build_program(x, subset, dist, support, budget, q, 0);
  const auto c = detail::solve_with_norm_cuts(ap, x, subset, dist, budget, q, options);
  Lift lift;
  lift.deltas = c.deltas;
  for (const auto& d : lift.deltas) lift.gain += cost_of(d, x);
  return lift;
}

}  // namespace wdro
