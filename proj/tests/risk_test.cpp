#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support/brute_force.hpp"
#include "wdro/errors.hpp"
#include "wdro/problems.hpp"
#include "wdro/risk.hpp"

namespace wdro {
namespace {

TEST(OwaWeightsTest, MatchesWorkedCases) {
  EXPECT_EQ(owa_weights(0.05, 10), (Vector{1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  const Vector half = owa_weights(0.5, 4);
  EXPECT_DOUBLE_EQ(half[0], 0.5);
  EXPECT_DOUBLE_EQ(half[1], 0.5);
  EXPECT_DOUBLE_EQ(half[2], 0.0);
  for (double w : owa_weights(1.0, 3)) EXPECT_DOUBLE_EQ(w, 1.0 / 3);
  const Vector w = owa_weights(0.75, 2);
  EXPECT_NEAR(w[0], 2.0 / 3, 1e-15);
  EXPECT_NEAR(w[1], 1.0 / 3, 1e-15);
  EXPECT_THROW(owa_weights(0.0, 3), InvalidInput);
}

TEST(OwaWeightsTest, NonincreasingAndSumToOne) {
  for (int N = 1; N <= 12; ++N) {
    for (int k = 1; k <= 50; ++k) {
      const Vector w = owa_weights(k / 50.0, N);
      double sum = 0;
      for (int i = 0; i < N; ++i) {
        sum += w[i];
        EXPECT_GE(w[i], 0.0);
        if (i > 0) EXPECT_LE(w[i], w[i - 1] + 1e-15);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(CvarTest, WorkedExamples) {
  EmpiricalDistribution d({{4}, {2}, {1}, {3}});
  EXPECT_DOUBLE_EQ(cvar_discrete(d, {1}, 0.5), 3.5);
  EXPECT_DOUBLE_EQ(cvar_discrete(d, {1}, 1.0), 2.5);
  EXPECT_DOUBLE_EQ(cvar_discrete(EmpiricalDistribution(std::vector<Vector>{{7}}), {1}, 0.3), 7.0);
  EXPECT_NEAR(cvar_lp(EmpiricalDistribution({{5}, {1}}), {1}, 0.75), 11.0 / 3, 1e-12);
  EXPECT_NEAR(cvar_lp(d, {1}, 0.5), 3.5, 1e-12);
}

TEST(CvarTest, AgreesWithLpAndVariationalForm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 20;
    const int N = 1 + trial % 10;
    std::vector<Vector> xi(N, Vector(n));
    for (auto& v : xi) {
      for (double& a : v) a = std::floor(5 * u(rng));
    }
    EmpiricalDistribution d(xi);
    Binary x(n);
    for (int& v : x) v = u(rng) < 0.5;
    const double alpha = std::max(0.01, u(rng));
    const double direct = cvar_discrete(d, x, alpha);
    EXPECT_NEAR(cvar_lp(d, x, alpha), direct, 1e-8 * (1 + std::abs(direct)));
    // The minimum over t of t + E[(c-t)^+]/alpha is attained at a cost value.
    const Vector c = d.costs(x);
    double lowest = 1e300;
    for (double t : c) {
      double s = 0;
      for (double v : c) s += std::max(0.0, v - t);
      lowest = std::min(lowest, t + s / (alpha * N));
    }
    EXPECT_NEAR(lowest, direct, 1e-9 * (1 + direct));
  }
}

TEST(CvarTest, SandwichMonotoneHomogeneous) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4, N = 1 + trial % 8;
    std::vector<Vector> xi(N, Vector(n));
    for (auto& v : xi) {
      for (double& a : v) a = u(rng);
    }
    const Binary x = {1, 0, 1, 1};
    const double alpha = std::max(0.02, u(rng));
    EmpiricalDistribution d(xi);
    const double cv = cvar_discrete(d, x, alpha);
    const double mean = cvar_discrete(d, x, 1.0);
    EXPECT_LE(mean, cv + 1e-12);
    EXPECT_LE(cv, gamma_factor(alpha, N) * mean + 1e-12);
    auto scaled = xi;
    for (auto& v : scaled) {
      for (double& a : v) a *= 2.5;
    }
    EXPECT_NEAR(cvar_discrete(EmpiricalDistribution(scaled), x, alpha), 2.5 * cv, 1e-12);
    auto raised = xi;
    raised[trial % N][0] += 0.3;
    EXPECT_GE(cvar_discrete(EmpiricalDistribution(raised), x, alpha), cv - 1e-15);
  }
}

TEST(SolveCvarTest, SingleScenarioIsDeterministicKnapsack) {
  KnapsackInstance k{{3, 1, 4, 1, 5}, 6};
  const Vector c = {2, 1, 3, 0.5, 4};
  const auto det = solve_det(k, c);
  const auto r = solve_cvar(encode(k), EmpiricalDistribution({c}), 0.3);
  EXPECT_NEAR(r.objective, det.objective, 1e-9);
}

TEST(SolveCvarTest, MeanCostsSolveTheExpectationCase) {
  RepSelectionInstance rs{5, {{0, 1}, {2, 3, 4}}};
  EmpiricalDistribution d({{1, 3, 2, 2, 9}, {5, 2, 2, 4, 0}, {0, 2, 5, 1, 1}});
  const auto r = solve_cvar(encode(rs), d, 1.0);
  const auto det = solve_det(rs, d.mean());
  EXPECT_NEAR(r.objective, det.objective, 1e-9);
}

TEST(SolveCvarTest, MatchesEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 10;
    const int N = 1 + trial % 5;
    const FeasibleSet X = trial % 2 == 0 ? encode(testing::random_knapsack(rng, n))
                                         : encode(testing::random_rep_selection(rng, n));
    EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0), trial % 3 == 0));
    const double alpha = std::max(0.05, u(rng));
    const auto oracle = testing::brute_minimize(X, [&](const Binary& x) { return cvar_discrete(d, x, alpha); });
    const auto r = solve_cvar(X, d, alpha);
    ASSERT_EQ(r.status, milp::SolveStatus::kOptimal);
    EXPECT_TRUE(X.contains(r.x));
    EXPECT_NEAR(r.objective, oracle.value, 1e-6) << "trial " << trial;
  }
}

TEST(MeanHeuristicTest, RatioWithinBound) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 8;
    const int N = 1 + trial % 5;
    const FeasibleSet X = encode(testing::random_knapsack(rng, n));
    EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    const double alpha = trial % 4 == 0 ? 1.0 : std::max(0.05, u(rng));
    const auto h = mean_heuristic(X, d, alpha);
    const auto oracle = testing::brute_minimize(X, [&](const Binary& x) { return cvar_discrete(d, x, alpha); });
    EXPECT_DOUBLE_EQ(h.ratio_bound, std::min<double>(N, 1.0 / alpha));
    EXPECT_LE(h.solution.objective, h.ratio_bound * oracle.value + 1e-9);
    if (alpha == 1.0 || N == 1) EXPECT_NEAR(h.solution.objective, oracle.value, 1e-9);
  }
}

}  // namespace
}  // namespace wdro
