#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "simplex_internal.hpp"
#include "wdro/errors.hpp"
#include "wdro/milp.hpp"

namespace wdro::milp {

int LinearProgram::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  for (auto& row : rows) {
    if (static_cast<int>(row.coeffs.size()) < num_vars()) row.coeffs.resize(num_vars(), 0.0);
  }
  return num_vars() - 1;
}

void LinearProgram::add_row(std::vector<double> coeffs, Relation relation, double rhs) {
  if (static_cast<int>(coeffs.size()) > num_vars()) {
    throw InvalidInput("row has more coefficients than the program has variables");
  }
  coeffs.resize(num_vars(), 0.0);
  rows.push_back(LinearRow{std::move(coeffs), relation, rhs});
}

void LinearProgram::validate() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw InvalidInput("bound vectors do not match the number of variables");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw InvalidInput("non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw InvalidInput("invalid bounds on variable " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coeffs.size() != n) {
      throw InvalidInput("row " + std::to_string(i) + " has the wrong number of coefficients");
    }
    if (!std::isfinite(rows[i].rhs)) throw InvalidInput("non-finite right-hand side");
    for (double a : rows[i].coeffs) {
      if (!std::isfinite(a)) throw InvalidInput("non-finite constraint coefficient");
    }
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kGapReached: return "gap_reached";
  }
  return "unknown";
}

namespace {

// Dense tableau over the columns [structural | slack | artificial]. Every row
// i reads a_i x + s_i = b_i; the slack bounds encode the relation. Phase 1
// starts from the artificial basis and minimizes the artificial sum.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const std::vector<double>& lower,
                 const std::vector<double>& upper, const SimplexOptions& options)
      : lp_(lp),
        opt_(options),
        m_(lp.num_rows()),
        n_(lp.num_vars()),
        cols_(n_ + 2 * m_),
        tab_(static_cast<std::size_t>(m_) * cols_, 0.0),
        lo_(cols_),
        hi_(cols_),
        val_(cols_, 0.0),
        cost_(cols_, 0.0),
        d_(cols_, 0.0),
        basis_(m_),
        where_(cols_, -1),
        sigma_(m_, 1.0) {
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      hi_[j] = upper[j];
      if (std::isfinite(lo_[j])) {
        val_[j] = lo_[j];
      } else if (std::isfinite(hi_[j])) {
        val_[j] = hi_[j];
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int s = slack(i);
      switch (lp.rows[i].relation) {
        case Relation::kLessEqual: lo_[s] = 0.0; hi_[s] = kInf; break;
        case Relation::kGreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; break;
        case Relation::kEqual: lo_[s] = 0.0; hi_[s] = 0.0; break;
      }
      const int a = artificial(i);
      lo_[a] = 0.0;
      hi_[a] = kInf;
    }
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i].coeffs;
      double residual = lp.rows[i].rhs;
      for (int j = 0; j < n_; ++j) residual -= row[j] * val_[j];
      sigma_[i] = residual >= 0.0 ? 1.0 : -1.0;
      for (int j = 0; j < n_; ++j) at(i, j) = sigma_[i] * row[j];
      at(i, slack(i)) = sigma_[i];
      at(i, artificial(i)) = 1.0;
      basis_[i] = artificial(i);
      where_[artificial(i)] = i;
      val_[artificial(i)] = std::abs(residual);
    }
    for (int i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(lp.rows[i].rhs));
  }

  SolveReport run() {
    SolveReport report;
    // Phase 1.
    for (int i = 0; i < m_; ++i) cost_[artificial(i)] = 1.0;
    compute_reduced_costs();
    if (iterate() == Outcome::kUnbounded) {
      throw SolverFailure("phase 1 reported an unbounded ray");
    }
    refactor();
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) infeasibility += std::max(0.0, val_[artificial(i)]);
    report.pivots = pivots_;
    if (infeasibility > 1e-7 * (1.0 + rhs_scale_)) {
      report.status = SolveStatus::kInfeasible;
      return report;
    }
    for (int i = 0; i < m_; ++i) {
      const int a = artificial(i);
      hi_[a] = 0.0;
      if (where_[a] < 0) val_[a] = 0.0;
    }
    drive_out_artificials();

    // Phase 2.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.objective[j];
    compute_reduced_costs();
    return finish(report);
  }

  // Re-solves after the structural bounds change, starting from the optimal
  // basis of the previous solve: dual simplex until primal feasible, then a
  // primal cleanup pass.
  SolveReport reoptimize(const std::vector<double>& lower, const std::vector<double>& upper) {
    pivots_ = 0;
    flips_ = 0;
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      hi_[j] = upper[j];
      if (where_[j] >= 0) continue;
      if (d_[j] > opt_.optimality_tol && std::isfinite(lo_[j])) {
        val_[j] = lo_[j];
      } else if (d_[j] < -opt_.optimality_tol && std::isfinite(hi_[j])) {
        val_[j] = hi_[j];
      } else {
        val_[j] = std::clamp(val_[j], lo_[j], hi_[j]);
      }
    }
    recompute_basic_values();
    SolveReport report;
    if (!dual_iterate()) {
      report.pivots = pivots_;
      report.status = SolveStatus::kInfeasible;
      return report;
    }
    return finish(report);
  }

  std::size_t footprint() const { return tab_.size() * sizeof(double); }

 private:
  enum class Outcome { kOptimal, kUnbounded };

  // Primal simplex to optimality, then a residual check against the original
  // rows; a drifted tableau is refactored and repaired by further passes.
  SolveReport finish(SolveReport& report) {
    for (int round = 0;; ++round) {
      const Outcome outcome = iterate();
      report.pivots = pivots_;
      if (outcome == Outcome::kUnbounded) {
        report.status = SolveStatus::kUnbounded;
        report.objective = -kInf;
        return report;
      }
      compute_reduced_costs();
      recompute_basic_values();
      if (!residuals_ok()) refactor();
      if (primal_feasible() && !has_entering_candidate()) return optimal_report(report);
      if (round == 3) throw SolverFailure("simplex did not settle after refactorization");
      if (!primal_feasible() && !dual_iterate()) {
        report.pivots = pivots_;
        report.status = SolveStatus::kInfeasible;
        return report;
      }
    }
  }

  bool primal_feasible() const {
    for (int r = 0; r < m_; ++r) {
      if (bound_violation(basis_[r]) > 0.0) return false;
    }
    return true;
  }

  bool has_entering_candidate() const {
    for (int j = 0; j < cols_; ++j) {
      if (where_[j] >= 0 || lo_[j] == hi_[j]) continue;
      if (d_[j] < -opt_.optimality_tol && val_[j] < hi_[j]) return true;
      if (d_[j] > opt_.optimality_tol && val_[j] > lo_[j]) return true;
    }
    return false;
  }

  // Rebuilds the tableau as B^{-1} [A | I | diag(sigma)] from the original
  // rows, then the reduced costs and basic values.
  void refactor() {
    if (m_ == 0) return;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m_, cols_);
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i].coeffs;
      for (int j = 0; j < n_; ++j) full(i, j) = row[j];
      full(i, slack(i)) = 1.0;
      full(i, artificial(i)) = sigma_[i];
    }
    Eigen::MatrixXd basis(m_, m_);
    for (int r = 0; r < m_; ++r) basis.col(r) = full.col(basis_[r]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    if (!(lu.rcond() > 1e-14)) throw SolverFailure("simplex basis became singular");
    const Eigen::MatrixXd solved = lu.solve(full);
    for (int r = 0; r < m_; ++r) {
      for (int j = 0; j < cols_; ++j) at(r, j) = solved(r, j);
      for (int k = 0; k < m_; ++k) at(r, basis_[k]) = r == k ? 1.0 : 0.0;
    }
    since_refactor_ = 0;
    compute_reduced_costs();
    recompute_basic_values();
  }

  void maybe_refactor() {
    if (++since_refactor_ >= std::max(100, m_)) refactor();
  }

  SolveReport optimal_report(SolveReport& report) {
    check_residuals();
    report.status = SolveStatus::kOptimal;
    report.values.assign(val_.begin(), val_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      // Clamp round-off so callers always see bound-feasible values.
      report.values[j] = std::clamp(report.values[j], lo_[j], hi_[j]);
    }
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * report.values[j];
    report.objective = obj;
    report.bound = obj;
    report.abs_gap = 0.0;
    report.rel_gap = 0.0;
    report.duals.resize(m_);
    for (int i = 0; i < m_; ++i) report.duals[i] = -sigma_[i] * d_[artificial(i)];
    report.reduced_costs.assign(d_.begin(), d_.begin() + n_);
    return report;
  }

  // Dense tableau updates accumulate round-off; a basis whose values no longer
  // satisfy the original rows is rejected.
  void check_residuals() const {
    for (int j = 0; j < n_ + m_; ++j) {
      const double tol = 1e-6 * (1.0 + std::abs(val_[j]));
      if (val_[j] < lo_[j] - tol || val_[j] > hi_[j] + tol) throw SolverFailure("simplex lost primal feasibility");
    }
    if (!residuals_ok()) throw SolverFailure("simplex residual exceeds tolerance");
  }

  bool residuals_ok() const {
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i].coeffs;
      double lhs = val_[slack(i)] + sigma_[i] * val_[artificial(i)];
      double scale = std::abs(lp_.rows[i].rhs);
      for (int j = 0; j < n_; ++j) {
        lhs += row[j] * val_[j];
        scale += std::abs(row[j] * val_[j]);
      }
      if (std::abs(lhs - lp_.rows[i].rhs) > 1e-7 * (1.0 + scale)) return false;
    }
    return true;
  }

  double bound_violation(int b) const {
    const double tol = opt_.feasibility_tol * (1.0 + std::abs(val_[b]));
    if (val_[b] < lo_[b] - tol) return lo_[b] - val_[b];
    if (val_[b] > hi_[b] + tol) return val_[b] - hi_[b];
    return 0.0;
  }

  // Bounded dual simplex. Returns false when a row proves infeasibility.
  bool dual_iterate() {
    const std::int64_t limit = pivots_ + 50 * (m_ + n_) + 1000;
    while (true) {
      if (pivots_ > limit) throw SolverFailure("dual simplex iteration limit exceeded");
      int r = -1;
      double worst = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double v = bound_violation(basis_[i]);
        if (v > worst) {
          worst = v;
          r = i;
        }
      }
      if (r < 0) return true;
      const int b = basis_[r];
      const bool below = val_[b] < lo_[b];
      // x_b + sum_j a_rj x_j = const, so moving x_j by t moves x_b by -a_rj t.
      // Harris ratio test on the reduced costs: the cap uses the optimality
      // tolerance, the largest pivot within the cap enters.
      auto eligible = [&](int j, double& dir, double& a) {
        if (where_[j] >= 0 || lo_[j] == hi_[j]) return false;
        a = at(r, j);
        if (std::abs(a) <= opt_.pivot_tol) return false;
        // Direction x_j must move for x_b to move toward its violated bound.
        dir = below ? (a < 0 ? 1.0 : -1.0) : (a > 0 ? 1.0 : -1.0);
        if (dir > 0 && val_[j] >= hi_[j]) return false;
        if (dir < 0 && val_[j] <= lo_[j]) return false;
        return true;
      };
      double cap = kInf;
      for (int j = 0; j < cols_; ++j) {
        double dir = 0.0, a = 0.0;
        if (eligible(j, dir, a)) cap = std::min(cap, (std::max(0.0, dir * d_[j]) + opt_.optimality_tol) / std::abs(a));
      }
      int q = -1;
      double best_alpha = 0.0;
      for (int j = 0; j < cols_; ++j) {
        double dir = 0.0, a = 0.0;
        if (!eligible(j, dir, a) || std::max(0.0, dir * d_[j]) / std::abs(a) > cap) continue;
        if (std::abs(a) > best_alpha) {
          best_alpha = std::abs(a);
          q = j;
        }
      }
      if (q < 0) return false;
      const double target = below ? lo_[b] : hi_[b];
      pivot(r, q);
      val_[b] = target;
      recompute_basic_values();
      maybe_refactor();
    }
  }

  int slack(int i) const { return n_ + i; }
  int artificial(int i) const { return n_ + m_ + i; }
  double& at(int r, int c) { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }

  void compute_reduced_costs() {
    for (int j = 0; j < cols_; ++j) d_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  // Original column j of [A | I | diag(sigma)] applied to a scalar.
  void add_column(int j, double scale, std::vector<double>& acc) const {
    if (j < n_) {
      for (int i = 0; i < m_; ++i) acc[i] += scale * lp_.rows[i].coeffs[j];
    } else if (j < n_ + m_) {
      acc[j - n_] += scale;
    } else {
      const int i = j - n_ - m_;
      acc[i] += scale * sigma_[i];
    }
  }

  // x_B = B^{-1} (b - N x_N); B^{-1} e_i is sigma_i times the tableau column
  // of artificial i.
  void recompute_basic_values() {
    if (m_ == 0) return;
    std::vector<double> rhs(m_);
    for (int i = 0; i < m_; ++i) rhs[i] = lp_.rows[i].rhs;
    for (int j = 0; j < cols_; ++j) {
      if (where_[j] >= 0 || val_[j] == 0.0) continue;
      add_column(j, -val_[j], rhs);
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += sigma_[i] * at(r, artificial(i)) * rhs[i];
      val_[basis_[r]] = v;
    }
  }

  void pivot(int r, int q) {
    double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
    const double inv = 1.0 / prow[q];
    for (int j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double fd = d_[q];
    if (fd != 0.0) {
      for (int j = 0; j < cols_; ++j) d_[j] -= fd * prow[j];
    }
    d_[q] = 0.0;
    const int leaving = basis_[r];
    where_[leaving] = -1;
    basis_[r] = q;
    where_[q] = r;
    ++pivots_;
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_ + m_) continue;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < n_ + m_; ++j) {
        if (where_[j] >= 0) continue;
        const double a = std::abs(at(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; artificial stays basic at zero
      const int leaving = basis_[r];
      pivot(r, best);
      val_[leaving] = 0.0;
    }
    recompute_basic_values();
  }

  Outcome iterate() {
    int degenerate_run = 0;
    bool bland = false;
    bool refreshed = false;
    for (;;) {
      if (pivots_ + flips_ > opt_.max_pivots) {
        throw SolverFailure("simplex iteration limit exceeded");
      }
      // Pricing.
      int q = -1;
      double dir = 0.0;
      double best_score = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (where_[j] >= 0 || lo_[j] == hi_[j]) continue;
        const double dj = d_[j];
        double score = 0.0;
        double jdir = 0.0;
        if (dj < -opt_.optimality_tol && val_[j] < hi_[j]) {
          score = -dj;
          jdir = 1.0;
        } else if (dj > opt_.optimality_tol && val_[j] > lo_[j]) {
          score = dj;
          jdir = -1.0;
        } else {
          continue;
        }
        if (bland) {
          q = j;
          dir = jdir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          q = j;
          dir = jdir;
        }
      }
      if (q < 0) return Outcome::kOptimal;

      // Harris ratio test: bounds relaxed by the feasibility tolerance give a
      // step cap, and the largest pivot among rows within the cap leaves.
      const double relax = opt_.feasibility_tol;
      double cap = kInf;
      for (int r = 0; r < m_; ++r) {
        const double alpha = dir * at(r, q);
        const int b = basis_[r];
        if (alpha > opt_.pivot_tol && std::isfinite(lo_[b])) {
          cap = std::min(cap, (val_[b] - lo_[b] + relax) / alpha);
        } else if (alpha < -opt_.pivot_tol && std::isfinite(hi_[b])) {
          cap = std::min(cap, (hi_[b] - val_[b] + relax) / (-alpha));
        }
      }
      double theta = kInf;
      int leave = -1;
      if (std::isfinite(cap)) {
        double best_alpha = 0.0;
        for (int r = 0; r < m_; ++r) {
          const double alpha = dir * at(r, q);
          const int b = basis_[r];
          double limit = kInf;
          if (alpha > opt_.pivot_tol && std::isfinite(lo_[b])) {
            limit = (val_[b] - lo_[b]) / alpha;
          } else if (alpha < -opt_.pivot_tol && std::isfinite(hi_[b])) {
            limit = (hi_[b] - val_[b]) / (-alpha);
          }
          if (limit > cap) continue;
          best_alpha = std::max(best_alpha, std::abs(alpha));
        }
        for (int r = 0; r < m_; ++r) {
          const double alpha = dir * at(r, q);
          const int b = basis_[r];
          double limit = kInf;
          if (alpha > opt_.pivot_tol && std::isfinite(lo_[b])) {
            limit = (val_[b] - lo_[b]) / alpha;
          } else if (alpha < -opt_.pivot_tol && std::isfinite(hi_[b])) {
            limit = (hi_[b] - val_[b]) / (-alpha);
          }
          if (limit > cap) continue;
          if (bland) {
            // Smallest basic index among the well-conditioned candidates.
            if (std::abs(alpha) < 1e-2 * best_alpha) continue;
            if (leave < 0 || b < basis_[leave]) leave = r;
          } else if (std::abs(alpha) >= best_alpha) {
            leave = r;
            break;
          }
        }
        const double alpha = dir * at(leave, q);
        const int b = basis_[leave];
        theta = std::max(0.0, alpha > 0 ? (val_[b] - lo_[b]) / alpha : (hi_[b] - val_[b]) / (-alpha));
      }
      const double span = hi_[q] - lo_[q];
      const bool flip = span <= theta;
      if (flip) theta = span;
      if (!std::isfinite(theta)) {
        // Incrementally updated reduced costs drift; trust a ray only after a refresh.
        if (refreshed) return Outcome::kUnbounded;
        compute_reduced_costs();
        recompute_basic_values();
        refreshed = true;
        continue;
      }
      refreshed = false;

      if (theta <= 1e-12) {
        if (++degenerate_run > opt_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      // Move.
      if (theta != 0.0) {
        for (int r = 0; r < m_; ++r) {
          const double a = at(r, q);
          if (a != 0.0) val_[basis_[r]] -= dir * theta * a;
        }
      }
      if (flip) {
        val_[q] = dir > 0 ? hi_[q] : lo_[q];
        ++flips_;
        continue;
      }
      val_[q] += dir * theta;
      const int b = basis_[leave];
      const double alpha = dir * at(leave, q);
      const double target = alpha > 0 ? lo_[b] : hi_[b];
      pivot(leave, q);
      val_[b] = target;
      maybe_refactor();
    }
  }

  const LinearProgram& lp_;
  const SimplexOptions& opt_;
  int m_;
  int n_;
  int cols_;
  std::vector<double> tab_;
  std::vector<double> lo_, hi_, val_, cost_, d_;
  std::vector<int> basis_;
  std::vector<int> where_;
  std::vector<double> sigma_;
  double rhs_scale_ = 0.0;
  std::int64_t pivots_ = 0;
  std::int64_t flips_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

namespace detail {

SolveReport solve_lp_bounds(const LinearProgram& lp, const std::vector<double>& lower,
                            const std::vector<double>& upper, const SimplexOptions& options) {
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) {
      SolveReport report;
      report.status = SolveStatus::kInfeasible;
      return report;
    }
  }
  BoundedSimplex simplex(lp, lower, upper, options);
  return simplex.run();
}

class WarmState {
 public:
  explicit WarmState(BoundedSimplex simplex) : simplex(std::move(simplex)) {}
  BoundedSimplex simplex;
};

WarmSolve solve_lp_warm(const LinearProgram& lp, const std::vector<double>& lower,
                        const std::vector<double>& upper, const SimplexOptions& options,
                        const WarmState* start) {
  WarmSolve out;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) {
      out.report.status = SolveStatus::kInfeasible;
      return out;
    }
  }
  if (start != nullptr) {
    BoundedSimplex simplex = start->simplex;
    try {
      out.report = simplex.reoptimize(lower, upper);
      if (out.report.status == SolveStatus::kOptimal) {
        out.state = std::make_shared<const WarmState>(std::move(simplex));
      }
      return out;
    } catch (const SolverFailure&) {
      // Fall through to a cold solve.
    }
  }
  BoundedSimplex simplex(lp, lower, upper, options);
  out.report = simplex.run();
  if (out.report.status == SolveStatus::kOptimal) {
    out.state = std::make_shared<const WarmState>(std::move(simplex));
  }
  return out;
}

std::size_t footprint(const WarmState& state) { return state.simplex.footprint(); }

}  // namespace detail

SolveReport solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const auto start = std::chrono::steady_clock::now();
  SolveReport report = detail::solve_lp_bounds(lp, lp.lower, lp.upper, options);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wdro::milp
