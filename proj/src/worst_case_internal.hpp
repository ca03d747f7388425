#pragma once

#include <vector>

#include "wdro/worst_case.hpp"

namespace wdro::detail {

// One realization seen through the coordinates of x on a box support.
struct HeadroomRow {
  double base = 0.0;     // xihat^T x
  Vector headroom;       // b_j - xihat_j over the coordinates of x, in order
  Vector sorted;         // positive headrooms, ascending
  Vector prefix;         // prefix sums of `sorted`
  Vector prefix_sq;      // prefix sums of squares of `sorted`
  double total = 0.0;
  double radius = 0.0;   // 2-norm of the headroom
};

std::vector<int> support_of(const Binary& x);
HeadroomRow make_headroom_row(const Vector& xihat, const Vector& upper, const std::vector<int>& coords);

// Per-member budgets t_a for q = inf (exact water filling) and q = 2
// (Frank-Wolfe); gain is the resulting objective.
struct Allocation {
  Vector t;
  double gain = 0.0;
};
Allocation allocate_linf(const std::vector<const HeadroomRow*>& rows, double budget);
Allocation allocate_l2(const std::vector<const HeadroomRow*>& rows, double budget, double tolerance,
                       int max_iterations);

// 2-norm lift of a single realization with radius t: value, slope and the
// water level lambda with delta_j = min(h_j, lambda).
struct L2Point {
  double value = 0.0;
  double slope = 0.0;
  double level = 0.0;
};
L2Point l2_gain(const HeadroomRow& row, double t);

// The selection formulation over all N realizations, solved with branch and
// bound; used when subset enumeration is too large.
struct SelectionResult {
  std::vector<int> subset;
  std::vector<Vector> deltas;  // per member of `subset`
};
SelectionResult solve_selection_program(const Binary& x, const EmpiricalDistribution& dist,
                                        const SupportSet& support, double budget, Norm q, int l,
                                        const AdversaryOptions& options);

}  // namespace wdro::detail
