#pragma once

// Core domain types shared by every solver. All types validate at
// construction and are immutable afterwards.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wdro/milp.hpp"

namespace wdro {

using Vector = std::vector<double>;
// A solution x in {0,1}^n.
using Binary = std::vector<int>;

double dot(std::span<const double> a, std::span<const double> b);
double cost_of(std::span<const double> xi, const Binary& x);
int cardinality(const Binary& x);

// N cost realizations in R^n_+, each with probability 1/N. Duplicates are
// allowed.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<Vector> realizations);

  int size() const { return static_cast<int>(realizations_.size()); }
  int dimension() const { return dimension_; }
  const Vector& operator[](int i) const { return realizations_[i]; }
  const std::vector<Vector>& realizations() const { return realizations_; }

  // xi_i^T x for every realization, in realization order.
  Vector costs(const Binary& x) const;
  Vector mean() const;

 private:
  std::vector<Vector> realizations_;
  int dimension_ = 0;
};

enum class SupportKind { kUnrestricted, kBox, kPolytope };

struct HalfSpace {
  Vector normal;
  double offset = 0.0;  // normal^T xi <= offset
};

// The support Xi: R^n_+, a box [a, b] or a bounded polytope intersected with
// R^n_+. Polytopes are checked for boundedness and nonemptiness eagerly.
class SupportSet {
 public:
  static SupportSet unrestricted(int n);
  static SupportSet box(Vector lower, Vector upper);
  static SupportSet polytope(int n, std::vector<HalfSpace> rows);

  SupportKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  bool bounded() const { return kind_ != SupportKind::kUnrestricted; }
  // Box: a and b. Polytope: per-coordinate minima and maxima over the set.
  // Unrestricted: zeros and +inf.
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<HalfSpace>& halfspaces() const { return rows_; }

  bool contains(std::span<const double> xi, double tol = 1e-8) const;

  // Adds the membership rows for the n variables starting at `offset` and
  // tightens their bounds to the coordinate ranges.
  void constrain(milp::LinearProgram& lp, int offset) const;

 private:
  SupportSet() = default;

  SupportKind kind_ = SupportKind::kUnrestricted;
  int dimension_ = 0;
  Vector lower_;
  Vector upper_;
  std::vector<HalfSpace> rows_;
};

bool validate_support_membership(const EmpiricalDistribution& dist, const SupportSet& support);

// Wasserstein ground norm index q.
enum class Norm { kL1, kL2, kLInf };

const char* to_string(Norm q);
double norm(std::span<const double> v, Norm q);
// 1/q' with 1/q + 1/q' = 1: 0 for q=1, 1/2 for q=2, 1 for q=inf.
double dual_exponent(Norm q);
// ||x||_{q'} for binary x: (sum x)^{1/q'}, and 0 at x = 0.
double dual_norm_of_binary(const Binary& x, Norm q);

struct AmbiguitySpec {
  double epsilon = 0.0;
  Norm q = Norm::kL1;

  static AmbiguitySpec make(double epsilon, Norm q);
};

struct RiskBracket {
  int l = 1;
  bool exact = false;
};

inline constexpr double kFractionTol = 1e-9;

// The unique l with (l-1)/N < alpha <= l/N; exact when |alpha N - l| <= 1e-9.
RiskBracket risk_bracket(double alpha, int N);

class RiskSpec {
 public:
  RiskSpec(double alpha, int N);

  double alpha() const { return alpha_; }
  int sample_size() const { return N_; }
  int l() const { return bracket_.l; }
  bool is_exact_fraction() const { return bracket_.exact; }

 private:
  double alpha_;
  int N_;
  RiskBracket bracket_;
};

enum class ProblemTag { kGeneric, kKnapsack, kRepSelection, kDagShortestPath };

const char* to_string(ProblemTag tag);
ProblemTag problem_tag_from_string(const std::string& name);

// X = {x in {0,1}^n : rows}. Nonempty by construction.
class FeasibleSet {
 public:
  FeasibleSet(int n, std::vector<milp::LinearRow> constraints, ProblemTag tag = ProblemTag::kGeneric);

  int dimension() const { return n_; }
  ProblemTag tag() const { return tag_; }
  const std::vector<milp::LinearRow>& constraints() const { return rows_; }

  bool contains(const Binary& x, double tol = 1e-9) const;

  // Variables 0..n-1 are the binaries x with zero cost; callers append
  // their own columns.
  milp::MixedModel base_model() const;

 private:
  void check_shape() const;

  int n_;
  std::vector<milp::LinearRow> rows_;
  ProblemTag tag_;
};

// Outcome of a solver over X: the chosen x and its objective evaluated
// exactly by the matching evaluator (not the relaxation value).
struct SolveResult {
  milp::SolveStatus status = milp::SolveStatus::kInfeasible;
  Binary x;
  double objective = milp::kInf;
  double bound = -milp::kInf;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;

  bool has_solution() const { return !x.empty(); }
};

// Extracts the first `n` entries of a solver assignment as a binary vector.
Binary binary_part(const std::vector<double>& values, int n);

}  // namespace wdro
