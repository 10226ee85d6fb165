#include <gtest/gtest.h>

#include "support.hpp"

using namespace cartan;
using namespace cartan::catalog;

namespace {

DiagTuple chis(std::size_t X, std::vector<PointSet> sets) { return DiagTuple::indicators(X, sets); }

}  // namespace

TEST(Witness, CheckExamples) {
  auto z3 = cyclic_translation(3);
  EXPECT_TRUE(check_witness(*z3, {PointSet{}}, {PointSet{1}}, Witness{{{}}}));
  // first target is k = 0
  Witness w{{{WitnessPiece{PointSet{0}, 1, 0}}}};
  EXPECT_TRUE(check_witness(*z3, {PointSet{0}}, {PointSet{1, 2}}, w));
  Witness stay{{{WitnessPiece{PointSet{0}, 0, 0}}}};
  EXPECT_FALSE(check_witness(*z3, {PointSet{0}}, {PointSet{1, 2}}, stay));
  Witness out_of_range{{{WitnessPiece{PointSet{0}, 1, 3}}}};
  EXPECT_THROW(check_witness(*z3, {PointSet{0}}, {PointSet{1, 2}}, out_of_range), IndexOutOfRange);
}

TEST(Witness, OverlappingImagesRejected) {
  auto z3 = cyclic_translation(3);
  Witness w{{{WitnessPiece{PointSet{0}, 1, 0}, WitnessPiece{PointSet{1}, 0, 0}}}};
  EXPECT_FALSE(check_witness(*z3, {PointSet{0, 1}}, {PointSet{1, 2}}, w));
}

TEST(Search, Examples) {
  auto z3 = cyclic_translation(3);
  auto w = search_subequivalence(*z3, {PointSet{0}}, {PointSet{1, 2}});
  ASSERT_TRUE(w);
  EXPECT_TRUE(check_witness(*z3, {PointSet{0}}, {PointSet{1, 2}}, *w));
  EXPECT_FALSE(search_subequivalence(*z3, {PointSet{0, 1}}, {PointSet{2}}));
  auto z4 = cyclic_translation(4);
  EXPECT_TRUE(search_subequivalence(*z4, {PointSet{0}}, {PointSet{1, 2}}));
  EXPECT_TRUE(search_subequivalence(*z4, {PointSet{}}, {}));
}

TEST(DiagSubequivalent, Examples) {
  auto z3 = cyclic_translation(3);
  auto a = chis(3, {{0}, {1, 2}});
  auto self = diag_subequivalent(*z3, a, a);
  EXPECT_TRUE(self.holds);
  ASSERT_TRUE(self.witness);
  EXPECT_TRUE(check_witness(*z3, a.supports(), a.supports(), *self.witness));
  EXPECT_TRUE(diag_subequivalent(*z3, chis(3, {{0}}), chis(3, {{1, 2}})).holds);
  EXPECT_FALSE(diag_subequivalent(*z3, chis(3, {{0, 1}}), chis(3, {{2}})).holds);
}

TEST(DTau, Examples) {
  auto z3 = cyclic_translation(3);
  auto mu = extreme_invariant_measures(*z3)[0];
  EXPECT_EQ(d_tau(Func::zero(3), mu), 0);
  EXPECT_EQ(d_tau(Func::indicator(3, {0, 1}), mu), Rational(2, 3));
  auto ds = double_swap();
  auto ms = extreme_invariant_measures(*ds);
  EXPECT_EQ(d_tau(Func::indicator(4, {0}), ms[0]), Rational(1, 2));
  EXPECT_EQ(d_tau(Func::indicator(4, {0}), ms[1]), 0);
  Func neg(3);
  neg[0] = RadScalar(-1);
  EXPECT_THROW(d_tau(neg, mu), NotPositive);
}

TEST(DynamicalComparison, Examples) {
  EXPECT_TRUE(dynamical_comparison_check(*cyclic_translation(2)).holds);
  // |O| < |V| on two points: three pairs with O empty, two with O a singleton
  EXPECT_EQ(dynamical_comparison_check(*cyclic_translation(2)).pairs_checked, 5u);
  EXPECT_TRUE(dynamical_comparison_check(*cyclic_translation(3)).holds);
  EXPECT_THROW(dynamical_comparison_check(*cyclic_translation(4), 100), ResourceBound);
}

// Regression value: the double swap has comparison even though it is not
// minimal, since each orbit is a copy of Z/2 and the measures see both orbits.
TEST(DynamicalComparison, DoubleSwapRegression) {
  auto r = dynamical_comparison_check(*double_swap());
  EXPECT_TRUE(r.holds);
  // the hypothesis factors over the two orbits: 5 * 5 pairs
  EXPECT_EQ(r.pairs_checked, 25u);
}

TEST(CuntzOracle, Examples) {
  auto z3 = cyclic_translation(3);
  auto a = chis(3, {{0}});
  EXPECT_TRUE(cuntz_oracle(z3, a, a));
  EXPECT_TRUE(cuntz_oracle(z3, chis(3, {{0}}), chis(3, {{1, 2}})));
  EXPECT_FALSE(cuntz_oracle(z3, chis(3, {{0, 1}}), chis(3, {{2}})));
  auto fixed = trivial_action(cyclic_group_spec(2), 1);
  EXPECT_THROW(cuntz_oracle(fixed, chis(1, {{0}}), chis(1, {{0}})), NotFree);
  // a non-positive crossed element is rejected
  auto u = CrossedElement::u(z3, 1);
  EXPECT_THROW(cuntz_oracle(u, u), NotPositive);
}

TEST(ComparisonProperty, SearchMatchesBruteForce) {
  testkit::Rng r(51);
  auto systems = testkit::all_cyclic_actions_up_to(4, 3);
  // orbit patterns by total size 1..4: Z1 1+1+1+1, Z2 1+2+2+3, Z3 1+1+2+2
  EXPECT_EQ(systems.size(), 4u + 8u + 6u);
  for (const auto& [name, sys] : systems) {
    const std::size_t X = sys->num_points();
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<PointSet> F(1 + r.below(2)), V(1 + r.below(2));
      for (auto& f : F) f = r.subset(X);
      for (auto& v : V) v = r.subset(X);
      auto w = search_subequivalence(*sys, F, V);
      ASSERT_EQ(w.has_value(), testkit::brute_force_subequivalent(*sys, F, V)) << name;
      if (w) { EXPECT_TRUE(check_witness(*sys, F, V, *w)); }
    }
  }
}

TEST(ComparisonProperty, ReflexiveAndTransitive) {
  testkit::Rng r(52);
  auto systems = testkit::small_free_systems();
  int chains = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& sys = r.pick(systems).sys;
    const std::size_t X = sys->num_points();
    auto a = testkit::random_tuple(r, X, 1 + r.below(2), 0.3);
    auto b = testkit::random_tuple(r, X, 1 + r.below(2), 0.5);
    auto c = testkit::random_tuple(r, X, 1 + r.below(2), 0.7);
    EXPECT_TRUE(diag_subequivalent(*sys, a, a).holds);
    if (diag_subequivalent(*sys, a, b).holds && diag_subequivalent(*sys, b, c).holds) {
      ++chains;
      EXPECT_TRUE(diag_subequivalent(*sys, a, c).holds);
    }
  }
  EXPECT_GT(chains, 20);
}

TEST(ComparisonProperty, OracleAndMeasureMonotonicity) {
  testkit::Rng r(53);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 200; ++trial) {
    const auto& sys = r.pick(systems).sys;
    const std::size_t X = sys->num_points();
    auto a = testkit::random_tuple(r, X, 1 + r.below(2), 0.3);
    auto b = testkit::random_tuple(r, X, 1 + r.below(2), 0.5);
    if (!diag_subequivalent(*sys, a, b).holds) continue;
    EXPECT_TRUE(cuntz_oracle(sys, a, b));
    for (const auto& mu : extreme_invariant_measures(*sys)) {
      Rational ta = 0, tb = 0;
      for (const auto& f : a.entries) ta += d_tau(f, mu);
      for (const auto& f : b.entries) tb += d_tau(f, mu);
      EXPECT_LE(ta, tb);
    }
  }
}
