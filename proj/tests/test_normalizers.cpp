#include <gtest/gtest.h>

#include "support.hpp"

using namespace cartan;
using namespace cartan::catalog;

namespace {

Func chi(const SystemRef& sys, PointSet s) { return Func::indicator(sys->num_points(), s); }

CrossedElement term(const SystemRef& sys, PointSet s, std::size_t g) { return CrossedElement::term(sys, chi(sys, s), g); }

// Coefficient supports pairwise disjoint, evaluated without the freeness guard.
bool supports_disjoint(const CrossedElement& a) {
  PointSet seen;
  for (const auto& f : a.coeffs()) {
    PointSet s = open_support(f);
    if (!s.disjoint(seen)) return false;
    seen |= s;
  }
  return true;
}

}  // namespace

TEST(Normalizer, Examples) {
  auto z3 = cyclic_translation(3);
  EXPECT_TRUE(is_normalizer(CrossedElement::u(z3, 1)));
  EXPECT_TRUE(is_normalizer(CrossedElement::unit(z3)));
  EXPECT_FALSE(is_normalizer(term(z3, {0}, 0) + term(z3, {0}, 1)));
  EXPECT_FALSE(is_r_normalizer_by_support(term(z3, {0}, 0) + term(z3, {0}, 1)));
}

TEST(Normalizer, DiagonalElementsNormalize) {
  auto z3 = cyclic_translation(3);
  Func f(3);
  f[1] = RadScalar(Gauss(Rational(2), Rational(-1)));
  auto a = CrossedElement::diagonal(z3, f);
  EXPECT_TRUE(is_r_normalizer(a));
  EXPECT_TRUE(is_s_normalizer(a));
}

TEST(Normalizer, SquareOutsideSubalgebraIsNotRNormalizer) {
  auto ds = double_swap();
  auto a = term(ds, {0}, 0) + term(ds, {0}, 1);
  EXPECT_FALSE((adjoint(a) * a).in_subalgebra());
  EXPECT_FALSE(is_r_normalizer(a));
  EXPECT_FALSE(is_r_normalizer_by_support(a));
}

TEST(Normalizer, DisjointSupportsZ2) {
  auto z2 = cyclic_translation(2);
  auto a = term(z2, {0}, 0) + term(z2, {1}, 1);
  EXPECT_TRUE(is_r_normalizer(a));
  EXPECT_TRUE(is_r_normalizer_by_support(a));
  EXPECT_TRUE(is_r_normalizer_by_support(CrossedElement::term(z2, chi(z2, {0, 1}), 1)));
}

TEST(Normalizer, SupportCriterionRequiresFreeness) {
  auto fixed = trivial_action(cyclic_group_spec(2), 1);
  EXPECT_THROW(is_r_normalizer_by_support(CrossedElement::unit(fixed)), NotFree);
}

// With a fixed point the support criterion and the algebraic predicate
// disagree: on one point, a = u_e + i u_g has a^* chi a = 2 chi.
TEST(Normalizer, NonFreeCounterexample) {
  auto fixed = trivial_action(cyclic_group_spec(2), 1);
  auto a = CrossedElement::unit(fixed) + RadScalar(Gauss::i()) * CrossedElement::u(fixed, 1);
  EXPECT_TRUE(is_r_normalizer(a));
  EXPECT_FALSE(supports_disjoint(a));
  EXPECT_EQ(adjoint(a) * a, RadScalar(2) * CrossedElement::unit(fixed));
}

TEST(MatrixNormalizer, Examples) {
  auto z2 = cyclic_translation(2);
  auto diag = MatrixElement::diagonal(z2, {chi(z2, {0}), chi(z2, {0, 1})});
  EXPECT_TRUE(matrix_is_r_normalizer_entrywise(diag));
  EXPECT_TRUE(matrix_is_r_normalizer_by_support(diag));
  EXPECT_TRUE(matrix_is_r_normalizer_by_reduction(diag));

  MatrixElement bad(z2, 2);
  bad.at(0, 0) = term(z2, {0}, 0);
  bad.at(0, 1) = term(z2, {0}, 0);
  EXPECT_FALSE(matrix_is_r_normalizer_entrywise(bad));
  EXPECT_FALSE(matrix_is_r_normalizer_by_support(bad));
  EXPECT_FALSE(matrix_is_r_normalizer_by_reduction(bad));

  MatrixElement good(z2, 2);
  good.at(0, 0) = term(z2, {0}, 0);
  good.at(0, 1) = term(z2, {1}, 0);
  EXPECT_TRUE(matrix_is_r_normalizer_entrywise(good));
  EXPECT_TRUE(matrix_is_r_normalizer_by_support(good));
  EXPECT_TRUE(matrix_is_r_normalizer_by_reduction(good));
}

TEST(OrthogonalSum, Examples) {
  auto z2 = cyclic_translation(2);
  auto single = orthogonal_sum(std::vector<CrossedElement>{CrossedElement::u(z2, 1)});
  EXPECT_EQ(single.sum, CrossedElement::u(z2, 1));
  EXPECT_TRUE(single.normalizer);

  // x_1 = chi_0, x_2 = chi_1 u_1: x_1^* x_2 = 0 but x_1 x_2^* = chi_0 u_1
  std::vector<CrossedElement> left_only{term(z2, {0}, 0), term(z2, {1}, 1)};
  EXPECT_THROW(orthogonal_sum(left_only), HypothesisViolated);
  auto r_only = orthogonal_sum(left_only, OrthogonalHypotheses{true, false});
  EXPECT_TRUE(r_only.r_certified);
  EXPECT_FALSE(r_only.normalizer);
  EXPECT_TRUE(is_r_normalizer(r_only.sum));
  EXPECT_FALSE(is_s_normalizer(r_only.sum));

  auto z4 = cyclic_translation(4);
  auto both = orthogonal_sum(std::vector<CrossedElement>{term(z4, {0}, 0), term(z4, {2}, 1)});
  EXPECT_TRUE(both.normalizer);
  EXPECT_TRUE(is_normalizer(both.sum));

  EXPECT_THROW(orthogonal_sum(std::vector<CrossedElement>{term(z2, {0}, 0), term(z2, {0}, 1)}), HypothesisViolated);
  EXPECT_THROW(orthogonal_sum(std::vector<CrossedElement>{}), HypothesisViolated);
}

TEST(SquareInSubalgebra, Examples) {
  auto z3 = cyclic_translation(3);
  EXPECT_TRUE(check_square_in_subalgebra(CrossedElement::u(z3, 2)));
  EXPECT_TRUE(check_square_in_subalgebra(CrossedElement::diagonal(z3, chi(z3, {1}))));
  EXPECT_FALSE(check_square_in_subalgebra(term(z3, {0}, 0) + term(z3, {0}, 1)));
}

TEST(NormalizerPreserving, Examples) {
  auto z2 = cyclic_translation(2);
  UnitMap zero(z2, 2);
  EXPECT_TRUE(check_normalizer_preserving(zero).preserving);

  UnitMap bad(z2, 2);
  auto x = RadScalar(Rational(1, 2)) * (term(z2, {0}, 0) + term(z2, {0}, 1));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) bad(i, j) = x;
  EXPECT_FALSE(check_normalizer_preserving(bad).preserving);

  CastleOzmData d;
  d.n = 2;
  d.castle.towers.push_back({PointSet{0}, {0, 1}});
  d.weights.push_back(chi(z2, {0}));
  d.phases.push_back({Func::constant(2, RadScalar(1)), Func::constant(2, RadScalar(1))});
  auto report = check_normalizer_preserving(build_castle_ozm(z2, d));
  EXPECT_TRUE(report.preserving);
  EXPECT_TRUE(report.diagonal_in_subalgebra);
}

TEST(NormalizerProperty, SupportCharacterization) {
  testkit::Rng r(41);
  auto systems = testkit::small_free_systems();
  int positives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    bool alg = is_r_normalizer(a);
    ASSERT_EQ(alg, is_r_normalizer_by_support(a)) << trial;
    positives += alg;
  }
  EXPECT_GT(positives, 100);
  EXPECT_LT(positives, 380);
}

TEST(NormalizerProperty, ClosureProperties) {
  testkit::Rng r(42);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 300; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    auto b = testkit::random_element(r, sys);
    if (is_r_normalizer(a) && is_r_normalizer(b)) { EXPECT_TRUE(is_r_normalizer(a * b)); }
    EXPECT_EQ(is_r_normalizer(adjoint(a)), is_s_normalizer(a));
    EXPECT_EQ(is_normalizer(a), is_r_normalizer(a) && is_s_normalizer(a));
    if (is_normalizer(a)) { EXPECT_TRUE(check_square_in_subalgebra(a)); }
  }
}

TEST(NormalizerProperty, FloatModeAgrees) {
  testkit::Rng r(43);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 100; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    EXPECT_EQ(is_r_normalizer(a), is_r_normalizer(to_float(a)));
    EXPECT_EQ(is_normalizer(a), is_normalizer(to_float(a)));
  }
}

TEST(NormalizerProperty, MatrixCriteriaAgree) {
  testkit::Rng r(44);
  auto systems = testkit::small_free_systems();
  int positives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto x = testkit::random_matrix(r, sys, 1 + r.below(3));
    bool entry = matrix_is_r_normalizer_entrywise(x);
    ASSERT_EQ(entry, matrix_is_r_normalizer_by_support(x)) << trial;
    ASSERT_EQ(entry, matrix_is_r_normalizer_by_reduction(x)) << trial;
    positives += entry;
  }
  EXPECT_GT(positives, 20);
}
