#include "wdro/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wdro/errors.hpp"

namespace wdro {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double cost_of(std::span<const double> xi, const Binary& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0) s += xi[j];
  }
  return s;
}

int cardinality(const Binary& x) { return std::accumulate(x.begin(), x.end(), 0); }

Binary binary_part(const std::vector<double>& values, int n) {
  Binary x(n);
  for (int j = 0; j < n; ++j) x[j] = values[j] > 0.5 ? 1 : 0;
  return x;
}

// ---------------------------------------------------------------------------

EmpiricalDistribution::EmpiricalDistribution(std::vector<Vector> realizations)
    : realizations_(std::move(realizations)) {
  if (realizations_.empty()) throw InvalidInput("empirical distribution needs N >= 1 realizations");
  dimension_ = static_cast<int>(realizations_.front().size());
  if (dimension_ < 1) throw InvalidInput("realizations must have dimension n >= 1");
  for (const auto& xi : realizations_) {
    if (static_cast<int>(xi.size()) != dimension_) {
      throw InvalidInput("all realizations must share the same dimension");
    }
    for (double v : xi) {
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput("realization components must be finite and nonnegative");
      }
    }
  }
}

Vector EmpiricalDistribution::costs(const Binary& x) const {
  if (static_cast<int>(x.size()) != dimension_) throw InvalidInput("solution dimension mismatch");
  Vector c(realizations_.size());
  for (std::size_t i = 0; i < realizations_.size(); ++i) c[i] = cost_of(realizations_[i], x);
  return c;
}

Vector EmpiricalDistribution::mean() const {
  Vector m(dimension_, 0.0);
  for (const auto& xi : realizations_) {
    for (int j = 0; j < dimension_; ++j) m[j] += xi[j];
  }
  for (double& v : m) v /= static_cast<double>(realizations_.size());
  return m;
}

// ---------------------------------------------------------------------------

SupportSet SupportSet::unrestricted(int n) {
  if (n < 1) throw InvalidInput("support dimension must be >= 1");
  SupportSet s;
  s.kind_ = SupportKind::kUnrestricted;
  s.dimension_ = n;
  s.lower_.assign(n, 0.0);
  s.upper_.assign(n, milp::kInf);
  return s;
}

SupportSet SupportSet::box(Vector lower, Vector upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw InvalidInput("box bounds must be nonempty and of equal dimension");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] < 0.0 ||
        lower[j] > upper[j]) {
      throw InvalidInput("box requires finite 0 <= a <= b componentwise");
    }
  }
  SupportSet s;
  s.kind_ = SupportKind::kBox;
  s.dimension_ = static_cast<int>(lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

SupportSet SupportSet::polytope(int n, std::vector<HalfSpace> rows) {
  if (n < 1) throw InvalidInput("support dimension must be >= 1");
  for (const auto& h : rows) {
    if (static_cast<int>(h.normal.size()) != n) throw InvalidInput("half-space normal has wrong dimension");
  }
  milp::LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.add_variable(0.0, 0.0, milp::kInf);
  for (const auto& h : rows) lp.add_row(h.normal, milp::Relation::kLessEqual, h.offset);

  SupportSet s;
  s.kind_ = SupportKind::kPolytope;
  s.dimension_ = n;
  s.lower_.assign(n, 0.0);
  s.upper_.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (double sense : {1.0, -1.0}) {
      std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
      lp.objective[j] = sense;
      const auto report = milp::solve_lp(lp);
      if (report.status == milp::SolveStatus::kInfeasible) throw InvalidInput("polytope support is empty");
      if (report.status == milp::SolveStatus::kUnbounded) throw InvalidInput("polytope support is unbounded");
      if (sense > 0) {
        s.lower_[j] = std::max(0.0, report.objective);
      } else {
        s.upper_[j] = -report.objective;
      }
    }
  }
  s.rows_ = std::move(rows);
  return s;
}

bool SupportSet::contains(std::span<const double> xi, double tol) const {
  if (static_cast<int>(xi.size()) != dimension_) throw InvalidInput("support membership: dimension mismatch");
  for (double v : xi) {
    if (!(v >= -tol)) return false;
  }
  switch (kind_) {
    case SupportKind::kUnrestricted: return true;
    case SupportKind::kBox:
      for (int j = 0; j < dimension_; ++j) {
        if (xi[j] < lower_[j] - tol || xi[j] > upper_[j] + tol) return false;
      }
      return true;
    case SupportKind::kPolytope:
      for (const auto& h : rows_) {
        const double scale = 1.0 + std::abs(h.offset);
        if (dot(h.normal, xi) > h.offset + tol * scale) return false;
      }
      return true;
  }
  return false;
}

void SupportSet::constrain(milp::LinearProgram& lp, int offset) const {
  for (int j = 0; j < dimension_; ++j) {
    lp.lower[offset + j] = lower_[j];
    lp.upper[offset + j] = upper_[j];
  }
  for (const auto& h : rows_) {
    std::vector<double> coeffs(lp.num_vars(), 0.0);
    for (int j = 0; j < dimension_; ++j) coeffs[offset + j] = h.normal[j];
    lp.add_row(std::move(coeffs), milp::Relation::kLessEqual, h.offset);
  }
}

bool validate_support_membership(const EmpiricalDistribution& dist, const SupportSet& support) {
  if (dist.dimension() != support.dimension()) {
    throw InvalidInput("distribution and support dimensions differ");
  }
  return std::all_of(dist.realizations().begin(), dist.realizations().end(),
                     [&](const Vector& xi) { return support.contains(xi); });
}

// ---------------------------------------------------------------------------

const char* to_string(Norm q) {
  switch (q) {
    case Norm::kL1: return "1";
    case Norm::kL2: return "2";
    case Norm::kLInf: return "inf";
  }
  return "?";
}

double norm(std::span<const double> v, Norm q) {
  double acc = 0.0;
  switch (q) {
    case Norm::kL1:
      for (double a : v) acc += std::abs(a);
      return acc;
    case Norm::kL2:
      for (double a : v) acc += a * a;
      return std::sqrt(acc);
    case Norm::kLInf:
      for (double a : v) acc = std::max(acc, std::abs(a));
      return acc;
  }
  return acc;
}

double dual_exponent(Norm q) {
  switch (q) {
    case Norm::kL1: return 0.0;
    case Norm::kL2: return 0.5;
    case Norm::kLInf: return 1.0;
  }
  return 1.0;
}

double dual_norm_of_binary(const Binary& x, Norm q) {
  const int k = cardinality(x);
  if (k == 0) return 0.0;
  return std::pow(static_cast<double>(k), dual_exponent(q));
}

AmbiguitySpec AmbiguitySpec::make(double epsilon, Norm q) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw InvalidInput("epsilon must be finite and >= 0");
  return AmbiguitySpec{epsilon, q};
}

RiskBracket risk_bracket(double alpha, int N) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in (0, 1]");
  if (N < 1) throw InvalidInput("sample size N must be >= 1");
  const double t = alpha * N;
  const double nearest = std::round(t);
  RiskBracket b;
  if (std::abs(t - nearest) <= kFractionTol) {
    b.l = static_cast<int>(nearest);
    b.exact = true;
  } else {
    b.l = static_cast<int>(std::ceil(t));
  }
  b.l = std::clamp(b.l, 1, N);
  return b;
}

RiskSpec::RiskSpec(double alpha, int N) : alpha_(alpha), N_(N), bracket_(risk_bracket(alpha, N)) {}

// ---------------------------------------------------------------------------

const char* to_string(ProblemTag tag) {
  switch (tag) {
    case ProblemTag::kGeneric: return "generic";
    case ProblemTag::kKnapsack: return "knapsack";
    case ProblemTag::kRepSelection: return "rep_selection";
    case ProblemTag::kDagShortestPath: return "dag_shortest_path";
  }
  return "generic";
}

ProblemTag problem_tag_from_string(const std::string& name) {
  if (name == "generic") return ProblemTag::kGeneric;
  if (name == "knapsack") return ProblemTag::kKnapsack;
  if (name == "rep_selection") return ProblemTag::kRepSelection;
  if (name == "dag_shortest_path") return ProblemTag::kDagShortestPath;
  throw InvalidInput("unknown feasible-set tag '" + name + "'");
}

FeasibleSet::FeasibleSet(int n, std::vector<milp::LinearRow> constraints, ProblemTag tag)
    : n_(n), rows_(std::move(constraints)), tag_(tag) {
  if (n_ < 1) throw InvalidInput("feasible set needs n >= 1 variables");
  for (const auto& row : rows_) {
    if (static_cast<int>(row.coeffs.size()) != n_) throw InvalidInput("constraint row has wrong dimension");
    if (!std::isfinite(row.rhs)) throw InvalidInput("constraint rhs must be finite");
  }
  check_shape();
  if (contains(Binary(n_, 0)) || contains(Binary(n_, 1))) return;
  const auto report = milp::solve_mixed(base_model());
  if (!report.has_solution()) throw InvalidInput("feasible set X is empty");
}

void FeasibleSet::check_shape() const {
  switch (tag_) {
    case ProblemTag::kGeneric: return;
    case ProblemTag::kKnapsack:
      if (rows_.size() != 1 || rows_[0].relation != milp::Relation::kGreaterEqual ||
          std::any_of(rows_[0].coeffs.begin(), rows_[0].coeffs.end(), [](double w) { return w < 0; })) {
        throw InvalidInput("knapsack sets need exactly one row w^T x >= W with w >= 0");
      }
      return;
    case ProblemTag::kRepSelection: {
      std::vector<int> covered(n_, 0);
      for (const auto& row : rows_) {
        if (row.relation != milp::Relation::kEqual || row.rhs != 1.0) {
          throw InvalidInput("representatives-selection rows must read sum = 1");
        }
        for (int j = 0; j < n_; ++j) {
          if (row.coeffs[j] != 0.0 && row.coeffs[j] != 1.0) {
            throw InvalidInput("representatives-selection coefficients must be 0/1");
          }
          covered[j] += static_cast<int>(row.coeffs[j]);
        }
      }
      if (std::any_of(covered.begin(), covered.end(), [](int c) { return c != 1; })) {
        throw InvalidInput("representatives-selection groups must partition the items");
      }
      return;
    }
    case ProblemTag::kDagShortestPath: {
      std::vector<int> plus(n_, 0), minus(n_, 0);
      for (const auto& row : rows_) {
        if (row.relation != milp::Relation::kEqual) throw InvalidInput("flow rows must be equalities");
        for (int j = 0; j < n_; ++j) {
          if (row.coeffs[j] == 1.0) {
            ++plus[j];
          } else if (row.coeffs[j] == -1.0) {
            ++minus[j];
          } else if (row.coeffs[j] != 0.0) {
            throw InvalidInput("flow coefficients must be in {-1, 0, 1}");
          }
        }
      }
      for (int j = 0; j < n_; ++j) {
        if (plus[j] != 1 || minus[j] != 1) throw InvalidInput("each arc must leave one vertex and enter one vertex");
      }
      return;
    }
  }
}

bool FeasibleSet::contains(const Binary& x, double tol) const {
  if (static_cast<int>(x.size()) != n_) return false;
  for (int v : x) {
    if (v != 0 && v != 1) return false;
  }
  for (const auto& row : rows_) {
    double lhs = 0.0;
    for (int j = 0; j < n_; ++j) lhs += row.coeffs[j] * x[j];
    switch (row.relation) {
      case milp::Relation::kLessEqual:
        if (lhs > row.rhs + tol) return false;
        break;
      case milp::Relation::kGreaterEqual:
        if (lhs < row.rhs - tol) return false;
        break;
      case milp::Relation::kEqual:
        if (std::abs(lhs - row.rhs) > tol) return false;
        break;
    }
  }
  return true;
}

milp::MixedModel FeasibleSet::base_model() const {
  milp::MixedModel model;
  for (int j = 0; j < n_; ++j) {
    model.lp.add_variable(0.0, 0.0, 1.0);
    model.binaries.push_back(j);
  }
  for (const auto& row : rows_) model.lp.add_row(row.coeffs, row.relation, row.rhs);
  return model;
}

}  // namespace wdro
