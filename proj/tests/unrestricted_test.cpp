#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support/brute_force.hpp"
#include "wdro/errors.hpp"
#include "wdro/problems.hpp"
#include "wdro/unrestricted.hpp"
#include "wdro/worst_case.hpp"

namespace wdro {
namespace {

FeasibleSet random_problem(std::mt19937_64& rng, int n, int trial) {
  return trial % 2 == 0 ? encode(testing::random_knapsack(rng, n)) : encode(testing::random_rep_selection(rng, n));
}

TEST(CardinalityRangeTest, KnownShapes) {
  const auto rs = encode(RepSelectionInstance{5, {{0, 1}, {2}, {3, 4}}});
  EXPECT_EQ(cardinality_range(rs).min, 3);
  EXPECT_EQ(cardinality_range(rs).max, 3);
  const auto k = encode(KnapsackInstance{Vector(6, 1.0), 2.5});
  EXPECT_EQ(cardinality_range(k).min, 3);
  EXPECT_EQ(cardinality_range(k).max, 6);
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const auto X = random_problem(rng, 3 + trial % 10, trial);
    int lo = 100, hi = -1;
    for (const auto& x : testing::enumerate_feasible(X)) {
      lo = std::min(lo, cardinality(x));
      hi = std::max(hi, cardinality(x));
    }
    EXPECT_EQ(cardinality_range(X).min, lo);
    EXPECT_EQ(cardinality_range(X).max, hi);
  }
}

TEST(SolveDistrUnrestrictedTest, MatchesEnumerationForEveryNorm) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 45; ++trial) {
    const int n = 3 + trial % 10, N = 1 + trial % 4;
    const auto X = random_problem(rng, n, trial);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    const double alpha = std::max(0.05, u(rng));
    const AmbiguitySpec spec{0.3 * u(rng), static_cast<Norm>(trial % 3)};
    const auto oracle =
        testing::brute_minimize(X, [&](const Binary& x) { return worst_value_unrestricted(x, d, spec, alpha); });
    const auto r = solve_distr_unrestricted(X, d, spec, alpha);
    ASSERT_TRUE(r.has_solution());
    EXPECT_TRUE(X.contains(r.x));
    EXPECT_NEAR(r.objective, oracle.value, 1e-6) << trial;
    EXPECT_NEAR(r.objective, worst_value_unrestricted(r.x, d, spec, alpha), 1e-12);
    EXPECT_LE(r.bound, r.objective + 1e-9);
  }
}

TEST(SolveDistrUnrestrictedTest, L1ShiftsTheCvarOptimum) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 6, N = 2 + trial % 3;
    const auto X = random_problem(rng, n, trial);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    const double alpha = 0.5;
    const auto plain = solve_cvar(X, d, alpha);
    const auto robust = solve_distr_unrestricted(X, d, {0.2, Norm::kL1}, alpha);
    EXPECT_NEAR(cvar_discrete(d, robust.x, alpha), plain.objective, 1e-9);
    EXPECT_NEAR(robust.objective, plain.objective + 0.2 / alpha, 1e-9);
    const auto zero_radius = solve_distr_unrestricted(X, d, {0.0, Norm::kLInf}, alpha);
    EXPECT_NEAR(zero_radius.objective, plain.objective, 1e-9);
  }
}

TEST(SolveDistrUnrestrictedTest, ZeroInTheFeasibleSetWins) {
  const FeasibleSet X(3, {{{1, 1, 1}, milp::Relation::kLessEqual, 2}});
  const EmpiricalDistribution d({{1, 2, 3}});
  const auto r = solve_distr_unrestricted(X, d, {0.5, Norm::kL1}, 1.0);
  EXPECT_EQ(r.x, (Binary{0, 0, 0}));
  EXPECT_DOUBLE_EQ(r.objective, 0.0);
}

TEST(LambdaFamilyTest, WinnerIsTheFamilyMinimum) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + trial % 6, N = 3;
    const auto X = encode(testing::random_knapsack(rng, n));
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    for (Norm q : {Norm::kL2, Norm::kLInf}) {
      const AmbiguitySpec spec{0.15, q};
      const auto family = solve_lambda_family(X, d, spec, 2.0 / 3);
      double lowest = 1e300;
      for (std::size_t k = 0; k < family.per_lambda.size(); ++k) {
        const auto& r = family.per_lambda[k];
        if (!r.has_solution()) continue;
        lowest = std::min(lowest, r.objective);
        EXPECT_LE(cardinality(r.x), family.lambdas[k]);
      }
      EXPECT_LE(cardinality(family.best.x), family.winning_lambda);
      EXPECT_LE(family.best.objective, lowest + 1e-9);
      const auto serial = solve_lambda_family(X, d, spec, 2.0 / 3, 1e-9, Execution::kSerial);
      EXPECT_EQ(serial.best.x, family.best.x);
      if (q == Norm::kLInf) {
        EXPECT_NEAR(family.best.objective, solve_distr_unrestricted(X, d, spec, 2.0 / 3).objective, 1e-9);
      }
    }
  }
}

TEST(ExpectationTest, MatchesEnumerationAndFamily) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 10, N = 1 + trial % 4;
    const auto X = random_problem(rng, n, trial);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    const AmbiguitySpec spec{0.1 * (trial % 4), static_cast<Norm>(trial % 3)};
    const auto oracle =
        testing::brute_minimize(X, [&](const Binary& x) { return worst_value_unrestricted(x, d, spec, 1.0); });
    const auto r = solve_expectation_unrestricted(X, d, spec);
    EXPECT_NEAR(r.objective, oracle.value, 1e-6) << trial;
    EXPECT_NEAR(solve_lambda_family(X, d, spec, 1.0).best.objective, oracle.value, 1e-6);
  }
}

TEST(GammaApproxTest, RealizedRatioWithinGamma) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 8, N = 1 + trial % 4;
    const auto X = random_problem(rng, n, trial);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, Vector(n, 1.0)));
    const double alpha = trial % 5 == 0 ? 1.0 : std::max(0.05, u(rng));
    const AmbiguitySpec spec{0.2 * u(rng), static_cast<Norm>(trial % 3)};
    const auto h = gamma_approx_heuristic(X, d, spec, alpha);
    const auto oracle =
        testing::brute_minimize(X, [&](const Binary& x) { return worst_value_unrestricted(x, d, spec, alpha); });
    EXPECT_DOUBLE_EQ(h.ratio_bound, std::min<double>(N, 1.0 / alpha));
    EXPECT_LE(h.solution.objective, h.ratio_bound * oracle.value + 1e-9);
    if (alpha == 1.0) EXPECT_NEAR(h.solution.objective, oracle.value, 1e-9);
  }
}

TEST(TwoSolveTest, MatchesBruteForceDistrOptimum) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 9, N = 1 + trial % 4;
    const int l = 1 + trial % N;
    const auto X = random_problem(rng, n, trial);
    const Vector b = testing::random_upper(rng, n);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, b));
    const auto box = SupportSet::box(Vector(n, 0.0), b);
    const double eps = 0.3 * u(rng);
    const double alpha = static_cast<double>(l) / N;
    const RiskSpec risk(alpha, N);
    const auto oracle = testing::brute_minimize(X, [&](const Binary& x) {
      return worst_distribution(x, d, box, {eps, Norm::kL1}, risk).value;
    });
    TwoSolveReport report;
    const auto r = solve_box_q1_two_solve(X, d, box, eps, alpha, 1e-9, &report);
    EXPECT_NEAR(r.objective, oracle.value, 1e-6) << trial;
    EXPECT_NEAR(r.objective, std::min(report.cap_value, report.cvar_value), 1e-12);
  }
}

TEST(TwoSolveTest, RegimesAndErrors) {
  const auto X = encode(RepSelectionInstance{4, {{0, 1}, {2, 3}}});
  const EmpiricalDistribution d({{0.1, 0.9, 0.5, 0.5}, {0.9, 0.1, 0.5, 0.5}});
  const auto box = SupportSet::box(Vector(4, 0.0), {1.0, 2.0, 1.0, 1.0});
  TwoSolveReport report;
  solve_box_q1_two_solve(X, d, box, 0.0, 0.5, 1e-9, &report);
  EXPECT_TRUE(report.cvar_won);
  solve_box_q1_two_solve(X, d, box, 10.0, 0.5, 1e-9, &report);
  EXPECT_LE(report.cap_value, report.cvar_value);
  EXPECT_THROW(solve_box_q1_two_solve(X, d, box, 0.1, 0.3, 1e-9), InvalidInput);
}

}  // namespace
}  // namespace wdro
