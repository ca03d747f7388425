#include <cmath>

#include <gtest/gtest.h>

#include "wdro/errors.hpp"
#include "wdro/model.hpp"

namespace wdro {
namespace {

TEST(EmpiricalDistributionTest, ValidatesShapeAndSign) {
  EXPECT_THROW(EmpiricalDistribution({}), InvalidInput);
  EXPECT_THROW(EmpiricalDistribution({{1, 2}, {1}}), InvalidInput);
  EXPECT_THROW(EmpiricalDistribution({{1, -2}}), InvalidInput);
  EmpiricalDistribution d({{1, 2}, {3, 4}, {3, 4}});
  EXPECT_EQ(d.size(), 3);
  EXPECT_EQ(d.dimension(), 2);
  const auto c = d.costs({1, 1});
  EXPECT_DOUBLE_EQ(c[0], 3);
  EXPECT_DOUBLE_EQ(c[2], 7);
  EXPECT_NEAR(d.mean()[0], 7.0 / 3, 1e-15);
}

TEST(RiskBracketTest, RoundsNearIntegersAndCeilsOtherwise) {
  EXPECT_EQ(risk_bracket(0.1, 30).l, 3);
  EXPECT_TRUE(risk_bracket(0.1, 30).exact);
  EXPECT_EQ(risk_bracket(0.5, 30).l, 15);
  EXPECT_EQ(risk_bracket(0.25, 10).l, 3);
  EXPECT_FALSE(risk_bracket(0.25, 10).exact);
  EXPECT_EQ(risk_bracket(0.01, 10).l, 1);
  EXPECT_FALSE(risk_bracket(0.01, 10).exact);
  EXPECT_EQ(risk_bracket(1.0, 7).l, 7);
  EXPECT_THROW(risk_bracket(0.0, 5), InvalidInput);
  EXPECT_THROW(risk_bracket(1.5, 5), InvalidInput);
  // The bracket condition (l-1)/N < alpha <= l/N over a grid.
  for (int N = 1; N <= 20; ++N) {
    for (int k = 1; k <= 100; ++k) {
      const double alpha = k / 100.0;
      const int l = risk_bracket(alpha, N).l;
      EXPECT_LT((l - 1.0) / N, alpha + 1e-12);
      EXPECT_LE(alpha, l / static_cast<double>(N) + 1e-9);
    }
  }
}

TEST(NormTest, DualNormOfBinary) {
  EXPECT_DOUBLE_EQ(dual_norm_of_binary({1, 1, 0, 1}, Norm::kL1), 1.0);
  EXPECT_DOUBLE_EQ(dual_norm_of_binary({1, 1, 0, 1}, Norm::kL2), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(dual_norm_of_binary({1, 1, 0, 1}, Norm::kLInf), 3.0);
  EXPECT_DOUBLE_EQ(dual_norm_of_binary({0, 0}, Norm::kL1), 0.0);
  const std::vector<double> v = {3, -4};
  EXPECT_DOUBLE_EQ(norm(v, Norm::kL1), 7);
  EXPECT_DOUBLE_EQ(norm(v, Norm::kL2), 5);
  EXPECT_DOUBLE_EQ(norm(v, Norm::kLInf), 4);
  EXPECT_THROW(AmbiguitySpec::make(-1, Norm::kL1), InvalidInput);
}

TEST(SupportSetTest, BoxAndPolytope) {
  EXPECT_THROW(SupportSet::box({2}, {1}), InvalidInput);
  const auto box = SupportSet::box({0, 1}, {2, 3});
  EXPECT_TRUE(box.contains(std::vector<double>{1, 3}));
  EXPECT_FALSE(box.contains(std::vector<double>{1, 3.1}));

  const auto simplex = SupportSet::polytope(2, {{{1, 1}, 4}, {{1, -1}, 1}});
  EXPECT_NEAR(simplex.upper()[0], 2.5, 1e-9);
  EXPECT_NEAR(simplex.upper()[1], 4.0, 1e-9);
  EXPECT_NEAR(simplex.lower()[0], 0.0, 1e-9);
  EXPECT_TRUE(simplex.contains(std::vector<double>{2.5, 1.5}));
  EXPECT_FALSE(simplex.contains(std::vector<double>{3, 1}));
  EXPECT_THROW(SupportSet::polytope(2, {{{1, -1}, 1}}), InvalidInput);
  EXPECT_THROW(SupportSet::polytope(1, {{{1}, -1}}), InvalidInput);

  EmpiricalDistribution d({{1, 1}, {3, 0}});
  EXPECT_FALSE(validate_support_membership(d, simplex));
  EXPECT_TRUE(validate_support_membership(d, SupportSet::unrestricted(2)));
}

TEST(FeasibleSetTest, ShapeChecks) {
  using milp::Relation;
  FeasibleSet knap(3, {{{1, 2, 3}, Relation::kGreaterEqual, 4}}, ProblemTag::kKnapsack);
  EXPECT_TRUE(knap.contains({0, 1, 1}));
  EXPECT_FALSE(knap.contains({1, 1, 0}));
  EXPECT_THROW(FeasibleSet(3, {{{1, 2, 3}, Relation::kGreaterEqual, 7}}), InvalidInput);
  EXPECT_THROW(FeasibleSet(2, {{{1, 1}, Relation::kLessEqual, 1}}, ProblemTag::kKnapsack), InvalidInput);
  FeasibleSet rs(4, {{{1, 1, 0, 0}, Relation::kEqual, 1}, {{0, 0, 1, 1}, Relation::kEqual, 1}},
                 ProblemTag::kRepSelection);
  EXPECT_TRUE(rs.contains({1, 0, 0, 1}));
  EXPECT_THROW(FeasibleSet(3, {{{1, 1, 0}, Relation::kEqual, 1}}, ProblemTag::kRepSelection), InvalidInput);
  // A feasible set whose only members are mixed vectors needs the MIP check.
  FeasibleSet mixed(3, {{{1, 1, 1}, Relation::kEqual, 2}, {{1, 0, 0}, Relation::kLessEqual, 0}});
  EXPECT_TRUE(mixed.contains({0, 1, 1}));
  EXPECT_EQ(problem_tag_from_string("knapsack"), ProblemTag::kKnapsack);
  EXPECT_THROW(problem_tag_from_string("tsp"), InvalidInput);
}

}  // namespace
}  // namespace wdro
