#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>

#include "simplex_internal.hpp"
#include "wdro/errors.hpp"
#include "wdro/milp.hpp"

namespace wdro::milp {

void MixedModel::validate() const {
  lp.validate();
  for (int j : binaries) {
    if (j < 0 || j >= lp.num_vars()) throw InvalidInput("binary index out of range");
  }
}

double max_violation(const MixedModel& model, const std::vector<double>& values) {
  const auto& lp = model.lp;
  if (static_cast<int>(values.size()) != lp.num_vars()) return kInf;
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.lower[j] - values[j]);
    worst = std::max(worst, values[j] - lp.upper[j]);
  }
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) lhs += row.coeffs[j] * values[j];
    switch (row.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  for (int j : model.binaries) {
    worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
  }
  return worst;
}

namespace {

// Upper limit on the tableau copies kept by open nodes; beyond it children are
// solved from scratch.
constexpr std::size_t kWarmStartBytes = std::size_t{256} << 20;

struct Node {
  double parent_bound = 0.0;
  std::int64_t sequence = 0;
  std::vector<std::int8_t> fixing;  // per binary: -1 free, 0 or 1
  std::shared_ptr<const detail::WarmState> warm;  // parent's optimal tableau
  int branched = -1;        // binary fixed last, for pseudocost updates
  double distance = 0.0;    // how far that fixing moved it from the parent LP value
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.parent_bound != b.parent_bound) return a.parent_bound > b.parent_bound;
    return a.sequence < b.sequence;  // newest first among equal bounds
  }
};

double objective_of(const LinearProgram& lp, const std::vector<double>& values) {
  double obj = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) obj += lp.objective[j] * values[j];
  return obj;
}

class BranchAndBound {
 public:
  BranchAndBound(const MixedModel& model, const BranchOptions& options)
      : model_(model), opt_(options), lower_(model.lp.lower), upper_(model.lp.upper) {
    for (int j : model.binaries) {
      lower_[j] = std::max(lower_[j], 0.0);
      upper_[j] = std::min(upper_[j], 1.0);
    }
  }

  SolveReport run(const std::vector<double>* hint) {
    if (hint != nullptr && max_violation(model_, *hint) <= 1e-7) {
      std::vector<double> values = *hint;
      for (int j : model_.binaries) values[j] = std::round(values[j]);
      offer_incumbent(values, objective_of(model_.lp, values));
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{-kInf, sequence_++, std::vector<std::int8_t>(model_.binaries.size(), -1), nullptr});
    bool unbounded = false;

    // Best-first search with plunging: after a branch the nearer child is
    // solved next, which reaches integral leaves (and incumbents) early.
    std::optional<Node> plunge;
    while (plunge.has_value() || !open.empty()) {
      if (nodes_ >= opt_.max_nodes) {
        if (plunge.has_value()) open.push(std::move(*plunge));
        break;
      }
      Node node;
      if (plunge.has_value()) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        if (has_incumbent_ && open.top().parent_bound >= cutoff()) break;
        node = open.top();
        open.pop();
      }
      ++nodes_;

      std::vector<double> lo = lower_;
      std::vector<double> hi = upper_;
      for (std::size_t k = 0; k < node.fixing.size(); ++k) {
        if (node.fixing[k] >= 0) lo[model_.binaries[k]] = hi[model_.binaries[k]] = node.fixing[k];
      }
      detail::WarmSolve solved = detail::solve_lp_warm(model_.lp, lo, hi, opt_.simplex, node.warm.get());
      node.warm.reset();
      const SolveReport& lp = solved.report;
      pivots_ += lp.pivots;
      if (lp.status == SolveStatus::kUnbounded) {
        unbounded = true;
        break;
      }
      if (lp.status != SolveStatus::kOptimal) continue;
      if (node.branched >= 0 && std::isfinite(node.parent_bound)) {
        record_gain(node.branched, node.fixing[node.branched] == 1,
                    std::max(0.0, lp.objective - node.parent_bound) / node.distance);
      }
      if (has_incumbent_ && lp.objective >= cutoff()) {
        pruned_bound_ = std::min(pruned_bound_, lp.objective);
        continue;
      }

      const int branch = choose_branch(lp.values);
      if (branch < 0) {
        accept_integral(lp, solved.state.get(), lo, hi);
        continue;
      }
      const double v = lp.values[model_.binaries[branch]];
      const std::int8_t near = v >= 0.5 ? 1 : 0;
      if (has_incumbent_) fix_by_reduced_cost(lp, node.fixing);
      std::shared_ptr<const detail::WarmState> warm = solved.state;
      if (warm != nullptr && (open.size() + 2) * detail::footprint(*warm) > kWarmStartBytes) warm.reset();
      Node far{lp.objective, sequence_++, node.fixing, warm, branch, near == 1 ? v : 1.0 - v};
      far.fixing[branch] = static_cast<std::int8_t>(1 - near);
      open.push(std::move(far));
      plunge = Node{lp.objective, sequence_++, std::move(node.fixing), std::move(warm), branch,
                    near == 1 ? 1.0 - v : v};
      plunge->fixing[branch] = near;
    }

    SolveReport report;
    report.nodes = nodes_;
    report.pivots = pivots_;
    if (unbounded) {
      report.status = SolveStatus::kUnbounded;
      report.objective = -kInf;
      return report;
    }
    // Subtrees cut off within the gap tolerance still bound the optimum.
    double bound = has_incumbent_ ? std::min(incumbent_obj_, pruned_bound_) : kInf;
    if (!open.empty()) bound = std::min(bound, open.top().parent_bound);
    if (!has_incumbent_) {
      report.status = open.empty() ? SolveStatus::kInfeasible : SolveStatus::kGapReached;
      report.bound = bound;
      return report;
    }
    report.values = incumbent_;
    report.objective = incumbent_obj_;
    report.bound = bound;
    report.abs_gap = std::max(0.0, incumbent_obj_ - bound);
    report.rel_gap = report.abs_gap / std::max(1e-10, std::abs(incumbent_obj_));
    const bool closed = open.empty() || open.top().parent_bound >= cutoff();
    report.status = closed ? SolveStatus::kOptimal : SolveStatus::kGapReached;
    return report;
  }

 private:
  double cutoff() const {
    const double scale = std::abs(incumbent_obj_);
    return incumbent_obj_ - std::max({opt_.gap_tol, opt_.rel_gap * scale, 1e-9 * std::max(1.0, scale)});
  }

  void offer_incumbent(const std::vector<double>& values, double obj) {
    if (!has_incumbent_ || obj < incumbent_obj_ - 1e-12 * std::max(1.0, std::abs(obj))) {
      incumbent_ = values;
      incumbent_obj_ = obj;
      has_incumbent_ = true;
    }
  }

  void record_gain(int k, bool up, double per_unit) {
    auto& c = up ? up_cost_ : down_cost_;
    auto& n = up ? up_count_ : down_count_;
    c[k] += per_unit;
    ++n[k];
  }

  double estimate(int k, bool up) const {
    const auto& c = up ? up_cost_ : down_cost_;
    const auto& n = up ? up_count_ : down_count_;
    if (n[k] > 0) return c[k] / n[k];
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (n[i] > 0) {
        sum += c[i] / n[i];
        ++count;
      }
    }
    return count > 0 ? sum / count : 1.0;
  }

  // Pseudocost product rule; ties go to the lowest index.
  int choose_branch(const std::vector<double>& values) const {
    int branch = -1;
    double best = -1.0;
    for (std::size_t k = 0; k < model_.binaries.size(); ++k) {
      const double v = values[model_.binaries[k]];
      const double down = v - std::floor(v);
      const double up = std::ceil(v) - v;
      if (std::min(down, up) <= opt_.integrality_tol) continue;
      const int i = static_cast<int>(k);
      const double score = std::max(down * estimate(i, false), 1e-6) * std::max(up * estimate(i, true), 1e-6);
      if (score > best * (1.0 + 1e-12)) {
        best = score;
        branch = i;
      }
    }
    return branch;
  }

  // A binary sitting at a bound whose reduced cost alone lifts the relaxation
  // past the cutoff cannot move in any improving descendant.
  void fix_by_reduced_cost(const SolveReport& lp, std::vector<std::int8_t>& fixing) {
    if (lp.reduced_costs.empty()) return;
    const double room = cutoff() - lp.objective;
    for (std::size_t k = 0; k < model_.binaries.size(); ++k) {
      if (fixing[k] >= 0) continue;
      const int j = model_.binaries[k];
      const double v = lp.values[j];
      const double d = lp.reduced_costs[j];
      if (v <= opt_.integrality_tol && d > room) {
        fixing[k] = 0;
        pruned_bound_ = std::min(pruned_bound_, lp.objective + d);
      }
      if (v >= 1.0 - opt_.integrality_tol && -d > room) {
        fixing[k] = 1;
        pruned_bound_ = std::min(pruned_bound_, lp.objective - d);
      }
    }
  }

  // Re-solves with every binary fixed to its rounded value so the continuous
  // part is consistent with an exactly integral assignment.
  void accept_integral(const SolveReport& lp, const detail::WarmState* warm, std::vector<double>& lo,
                       std::vector<double>& hi) {
    bool exact = true;
    for (int j : model_.binaries) {
      const double r = std::round(lp.values[j]);
      if (lp.values[j] != r) exact = false;
      lo[j] = hi[j] = r;
    }
    if (exact) {
      offer_incumbent(lp.values, lp.objective);
      return;
    }
    SolveReport fixed = detail::solve_lp_warm(model_.lp, lo, hi, opt_.simplex, warm).report;
    pivots_ += fixed.pivots;
    if (fixed.status != SolveStatus::kOptimal) return;
    offer_incumbent(fixed.values, fixed.objective);
  }

  const MixedModel& model_;
  const BranchOptions& opt_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInf;
  bool has_incumbent_ = false;
  double pruned_bound_ = kInf;
  std::vector<double> down_cost_ = std::vector<double>(model_.binaries.size(), 0.0);
  std::vector<double> up_cost_ = std::vector<double>(model_.binaries.size(), 0.0);
  std::vector<int> down_count_ = std::vector<int>(model_.binaries.size(), 0);
  std::vector<int> up_count_ = std::vector<int>(model_.binaries.size(), 0);
  std::int64_t nodes_ = 0;
  std::int64_t pivots_ = 0;
  std::int64_t sequence_ = 0;
};

}  // namespace

SolveReport solve_mixed(const MixedModel& model, const BranchOptions& options,
                        const std::vector<double>* hint) {
  model.validate();
  const auto start = std::chrono::steady_clock::now();
  BranchAndBound search(model, options);
  SolveReport report = search.run(hint);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolveReport resolve_with_added_rows(MixedModel& model, std::vector<LinearRow> rows,
                                    const BranchOptions& options, const std::vector<double>* hint) {
  const auto added = static_cast<std::int64_t>(rows.size());
  for (auto& row : rows) model.lp.add_row(std::move(row.coeffs), row.relation, row.rhs);
  SolveReport report = solve_mixed(model, options, hint);
  report.cuts = added;
  return report;
}

}  // namespace wdro::milp
