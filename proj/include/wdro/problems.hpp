#pragma once

// Concrete combinatorial problem families, their encodings as binary
// feasible sets, and exact deterministic solvers.

#include <utility>
#include <vector>

#include "wdro/model.hpp"

namespace wdro {

// {x : w^T x >= W}
struct KnapsackInstance {
  Vector weights;
  double capacity = 0.0;
};

// Pick exactly one item from each group; groups partition {0, ..., n-1}.
struct RepSelectionInstance {
  int n = 0;
  std::vector<std::vector<int>> groups;
};

// Arc j corresponds to cost component j.
struct DagShortestPathInstance {
  int vertices = 0;
  std::vector<std::pair<int, int>> arcs;
  int source = 0;
  int sink = 0;
};

void validate(const KnapsackInstance& instance);
void validate(const RepSelectionInstance& instance);
void validate(const DagShortestPathInstance& instance);

FeasibleSet encode(const KnapsackInstance& instance);
FeasibleSet encode(const RepSelectionInstance& instance);
FeasibleSet encode(const DagShortestPathInstance& instance);

SolveResult solve_det(const KnapsackInstance& instance, const Vector& costs);
SolveResult solve_det(const RepSelectionInstance& instance, const Vector& costs);
SolveResult solve_det(const DagShortestPathInstance& instance, const Vector& costs);

// Turns min-max representatives selection over K scenarios into CVaR
// representatives selection with one extra single-item group. The CVaR
// optimum of the result equals value_map(min-max optimum).
struct ReducedInstance {
  RepSelectionInstance problem;
  EmpiricalDistribution distribution;
  double alpha = 0.0;
  double big_m = 0.0;
  int l = 0;
  int N = 0;

  double value_map(double minmax_value) const;
};

ReducedInstance reduce_minmax_rs_to_cvar_rs(const RepSelectionInstance& rs, const std::vector<Vector>& scenarios,
                                            double alpha);

// Layered graph: group g becomes the parallel arcs from vertex g to g+1, so
// s-t paths and selections coincide under the identity index map.
DagShortestPathInstance rs_to_shortest_path(const RepSelectionInstance& rs);

}  // namespace wdro
