#include "wdro/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "wdro/errors.hpp"
#include "wdro/risk.hpp"

namespace wdro {

namespace {

void check_costs(const Vector& costs, std::size_t n) {
  if (costs.size() != n) throw InvalidInput("cost vector has the wrong dimension");
  for (double c : costs) {
    if (!std::isfinite(c) || c < 0.0) throw InvalidInput("costs must be finite and nonnegative");
  }
}

std::vector<int> topological_order(const DagShortestPathInstance& g) {
  std::vector<int> indegree(g.vertices, 0);
  std::vector<std::vector<int>> out(g.vertices);
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    out[g.arcs[a].first].push_back(static_cast<int>(a));
    ++indegree[g.arcs[a].second];
  }
  std::queue<int> ready;
  for (int v = 0; v < g.vertices; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    order.push_back(v);
    for (int a : out[v]) {
      if (--indegree[g.arcs[a].second] == 0) ready.push(g.arcs[a].second);
    }
  }
  return order;
}

}  // namespace

void validate(const KnapsackInstance& instance) {
  if (instance.weights.empty()) throw InvalidInput("knapsack needs at least one item");
  double total = 0.0;
  for (double w : instance.weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidInput("knapsack weights must be finite and nonnegative");
    total += w;
  }
  if (!std::isfinite(instance.capacity) || instance.capacity < 0.0) {
    throw InvalidInput("knapsack capacity must be finite and nonnegative");
  }
  if (total < instance.capacity) throw InvalidInput("knapsack is infeasible: total weight below W");
}

void validate(const RepSelectionInstance& instance) {
  if (instance.n < 1 || instance.groups.empty()) throw InvalidInput("representatives selection needs items and groups");
  std::vector<int> seen(instance.n, 0);
  for (const auto& group : instance.groups) {
    if (group.empty()) throw InvalidInput("representatives-selection groups must be nonempty");
    for (int j : group) {
      if (j < 0 || j >= instance.n) throw InvalidInput("group item index out of range");
      ++seen[j];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidInput("groups must partition the items");
  }
}

void validate(const DagShortestPathInstance& instance) {
  if (instance.vertices < 2 || instance.arcs.empty()) throw InvalidInput("shortest path needs vertices and arcs");
  const auto in_range = [&](int v) { return v >= 0 && v < instance.vertices; };
  if (!in_range(instance.source) || !in_range(instance.sink) || instance.source == instance.sink) {
    throw InvalidInput("source and sink must be distinct vertices");
  }
  for (const auto& [tail, head] : instance.arcs) {
    if (!in_range(tail) || !in_range(head) || tail == head) throw InvalidInput("invalid arc");
  }
  if (static_cast<int>(topological_order(instance).size()) != instance.vertices) {
    throw InvalidInput("graph has a cycle");
  }
  std::vector<int> reached(instance.vertices, 0);
  reached[instance.source] = 1;
  for (int v : topological_order(instance)) {
    if (!reached[v]) continue;
    for (const auto& [tail, head] : instance.arcs) {
      if (tail == v) reached[head] = 1;
    }
  }
  if (!reached[instance.sink]) throw InvalidInput("sink is not reachable from source");
}

FeasibleSet encode(const KnapsackInstance& instance) {
  validate(instance);
  return FeasibleSet(static_cast<int>(instance.weights.size()),
                     {milp::LinearRow{instance.weights, milp::Relation::kGreaterEqual, instance.capacity}},
                     ProblemTag::kKnapsack);
}

FeasibleSet encode(const RepSelectionInstance& instance) {
  validate(instance);
  std::vector<milp::LinearRow> rows;
  for (const auto& group : instance.groups) {
    milp::LinearRow row{Vector(instance.n, 0.0), milp::Relation::kEqual, 1.0};
    for (int j : group) row.coeffs[j] = 1.0;
    rows.push_back(std::move(row));
  }
  return FeasibleSet(instance.n, std::move(rows), ProblemTag::kRepSelection);
}

FeasibleSet encode(const DagShortestPathInstance& instance) {
  validate(instance);
  const int n = static_cast<int>(instance.arcs.size());
  std::vector<milp::LinearRow> rows;
  for (int v = 0; v < instance.vertices; ++v) {
    const double supply = v == instance.source ? 1.0 : (v == instance.sink ? -1.0 : 0.0);
    rows.push_back(milp::LinearRow{Vector(n, 0.0), milp::Relation::kEqual, supply});
  }
  for (int a = 0; a < n; ++a) {
    rows[instance.arcs[a].first].coeffs[a] = 1.0;
    rows[instance.arcs[a].second].coeffs[a] = -1.0;
  }
  return FeasibleSet(n, std::move(rows), ProblemTag::kDagShortestPath);
}

SolveResult solve_det(const KnapsackInstance& instance, const Vector& costs) {
  check_costs(costs, instance.weights.size());
  return solve_linear(encode(instance), costs);
}

SolveResult solve_det(const RepSelectionInstance& instance, const Vector& costs) {
  validate(instance);
  check_costs(costs, instance.n);
  SolveResult result;
  result.status = milp::SolveStatus::kOptimal;
  result.x.assign(instance.n, 0);
  result.objective = 0.0;
  for (const auto& group : instance.groups) {
    int best = group.front();
    for (int j : group) {
      if (costs[j] < costs[best] || (costs[j] == costs[best] && j < best)) best = j;
    }
    result.x[best] = 1;
    result.objective += costs[best];
  }
  result.bound = result.objective;
  return result;
}

SolveResult solve_det(const DagShortestPathInstance& instance, const Vector& costs) {
  validate(instance);
  check_costs(costs, instance.arcs.size());
  std::vector<double> dist(instance.vertices, milp::kInf);
  std::vector<int> via(instance.vertices, -1);
  dist[instance.source] = 0.0;
  for (int v : topological_order(instance)) {
    if (dist[v] == milp::kInf) continue;
    for (std::size_t a = 0; a < instance.arcs.size(); ++a) {
      if (instance.arcs[a].first != v) continue;
      const int head = instance.arcs[a].second;
      if (dist[v] + costs[a] < dist[head]) {
        dist[head] = dist[v] + costs[a];
        via[head] = static_cast<int>(a);
      }
    }
  }
  SolveResult result;
  result.status = milp::SolveStatus::kOptimal;
  result.x.assign(instance.arcs.size(), 0);
  for (int v = instance.sink; v != instance.source; v = instance.arcs[via[v]].first) result.x[via[v]] = 1;
  result.objective = result.bound = dist[instance.sink];
  return result;
}

double ReducedInstance::value_map(double minmax_value) const {
  const double head = (l - 1) / (alpha * N);
  return (l - 1) * big_m / (alpha * N) + (1.0 - head) * minmax_value;
}

ReducedInstance reduce_minmax_rs_to_cvar_rs(const RepSelectionInstance& rs, const std::vector<Vector>& scenarios,
                                            double alpha) {
  validate(rs);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("the reduction needs alpha strictly inside (0, 1)");
  const int K = static_cast<int>(scenarios.size());
  if (K < 1) throw InvalidInput("the reduction needs at least one scenario");
  for (const auto& s : scenarios) check_costs(s, rs.n);

  const double ratio = K * alpha / (1.0 - alpha);
  const double nearest = std::round(ratio);
  int l = std::abs(ratio - nearest) <= kFractionTol * std::max(1.0, ratio) ? static_cast<int>(nearest)
                                                                          : static_cast<int>(std::ceil(ratio));
  l = std::max(l, 1);
  const int N = K + l - 1;
  double big_m = 0.0;
  for (const auto& s : scenarios) big_m += std::accumulate(s.begin(), s.end(), 0.0);

  RepSelectionInstance reduced;
  reduced.n = rs.n + 1;
  reduced.groups = rs.groups;
  reduced.groups.push_back({rs.n});

  std::vector<Vector> realizations;
  for (const auto& s : scenarios) {
    Vector xi = s;
    xi.push_back(0.0);
    realizations.push_back(std::move(xi));
  }
  Vector zeta(reduced.n, 0.0);
  zeta[rs.n] = big_m;
  for (int k = 0; k < l - 1; ++k) realizations.push_back(zeta);

  return ReducedInstance{std::move(reduced), EmpiricalDistribution(std::move(realizations)), alpha, big_m, l, N};
}

DagShortestPathInstance rs_to_shortest_path(const RepSelectionInstance& rs) {
  validate(rs);
  DagShortestPathInstance g;
  g.vertices = static_cast<int>(rs.groups.size()) + 1;
  g.source = 0;
  g.sink = g.vertices - 1;
  g.arcs.resize(rs.n);
  for (std::size_t layer = 0; layer < rs.groups.size(); ++layer) {
    for (int j : rs.groups[layer]) g.arcs[j] = {static_cast<int>(layer), static_cast<int>(layer) + 1};
  }
  return g;
}

}  // namespace wdro
