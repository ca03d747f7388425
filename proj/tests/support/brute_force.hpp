#pragma once

// Exhaustive oracles and random instance builders shared by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "wdro/model.hpp"
#include "wdro/problems.hpp"

namespace wdro::testing {

inline std::vector<Binary> enumerate_feasible(const FeasibleSet& problem) {
  const int n = problem.dimension();
  std::vector<Binary> out;
  Binary x(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int j = 0; j < n; ++j) x[j] = static_cast<int>((mask >> j) & 1u);
    if (problem.contains(x)) out.push_back(x);
  }
  return out;
}

struct BruteMin {
  double value = std::numeric_limits<double>::infinity();
  Binary argmin;
};

inline BruteMin brute_minimize(const FeasibleSet& problem, const std::function<double(const Binary&)>& f) {
  BruteMin best;
  for (const auto& x : enumerate_feasible(problem)) {
    const double v = f(x);
    if (v < best.value) {
      best.value = v;
      best.argmin = x;
    }
  }
  return best;
}

inline KnapsackInstance random_knapsack(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KnapsackInstance k;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    k.weights.push_back(u(rng));
    total += k.weights.back();
  }
  k.capacity = (0.2 + 0.5 * u(rng)) * total;
  return k;
}

inline RepSelectionInstance random_rep_selection(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> groups_dist(1, std::max(1, n / 2));
  const int groups = groups_dist(rng);
  std::vector<int> items(n);
  for (int j = 0; j < n; ++j) items[j] = j;
  std::shuffle(items.begin(), items.end(), rng);
  RepSelectionInstance rs;
  rs.n = n;
  rs.groups.resize(groups);
  for (int j = 0; j < n; ++j) rs.groups[j < groups ? j : std::uniform_int_distribution<int>(0, groups - 1)(rng)].push_back(items[j]);
  for (auto& g : rs.groups) std::sort(g.begin(), g.end());
  return rs;
}

// Realizations inside [0, upper], optionally on a coarse grid so that ties
// between costs occur.
inline std::vector<Vector> random_samples(std::mt19937_64& rng, int n, int N, const Vector& upper,
                                          bool grid = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> out(N, Vector(n));
  for (auto& xi : out) {
    for (int j = 0; j < n; ++j) {
      const double r = grid ? std::floor(4 * u(rng)) / 4 : u(rng);
      xi[j] = r * upper[j];
    }
  }
  return out;
}

inline Vector random_upper(std::mt19937_64& rng, int n, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector b(n);
  for (double& v : b) v = u(rng);
  return b;
}

}  // namespace wdro::testing
