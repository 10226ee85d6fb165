#include <gtest/gtest.h>

#include "support.hpp"

using namespace cartan;
using namespace cartan::catalog;

namespace {

Func chi(const SystemRef& sys, PointSet s) { return Func::indicator(sys->num_points(), s); }

CrossedElement term(const SystemRef& sys, PointSet s, std::size_t g) { return CrossedElement::term(sys, chi(sys, s), g); }

DenseMatrix<RadScalar> matmul(const DenseMatrix<RadScalar>& a, const DenseMatrix<RadScalar>& b) {
  DenseMatrix<RadScalar> c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

DenseMatrix<RadScalar> conj_transpose(const DenseMatrix<RadScalar>& a) {
  DenseMatrix<RadScalar> c(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) c(j, i) = a(i, j).conj();
  return c;
}

}  // namespace

TEST(Crossed, MultiplicationConvention) {
  auto z3 = cyclic_translation(3);
  EXPECT_EQ(CrossedElement::u(z3, 1) * CrossedElement::u(z3, 2), CrossedElement::unit(z3));
  auto p = term(z3, {0}, 0);
  EXPECT_EQ(p * p, p);
  // u_g chi_{0} u_g^* = chi_{g.0}
  auto conj = CrossedElement::u(z3, 1) * CrossedElement::diagonal(z3, chi(z3, {0})) * CrossedElement::u(z3, 1).adjoint();
  EXPECT_EQ(conj, CrossedElement::diagonal(z3, chi(z3, {1})));
}

TEST(Crossed, Adjoint) {
  auto z3 = cyclic_translation(3);
  EXPECT_EQ(adjoint(CrossedElement::u(z3, 1)), CrossedElement::u(z3, 2));
  Func f(3);
  f[0] = RadScalar(Gauss(Rational(1), Rational(2)));
  EXPECT_EQ(adjoint(CrossedElement::diagonal(z3, f)), CrossedElement::diagonal(z3, f.conj()));
  auto a = term(z3, {0}, 1);
  // (chi_0 u_1)^* = (chi_0 o alpha_{1}) u_{2} = chi_{2} u_2
  EXPECT_EQ(adjoint(a), term(z3, {2}, 2));
  auto sq = adjoint(a) * a;
  EXPECT_TRUE(sq.in_subalgebra());
  EXPECT_TRUE(cond_expectation(sq).is_positive());
  EXPECT_FALSE(cond_expectation(sq).is_zero());
}

TEST(Crossed, ConditionalExpectation) {
  auto z3 = cyclic_translation(3);
  EXPECT_TRUE(cond_expectation(CrossedElement::u(z3, 1)).is_zero());
  auto f = chi(z3, {0, 2});
  EXPECT_EQ(cond_expectation(CrossedElement::diagonal(z3, f)), f);
}

TEST(Func, OpenSupportAndCutdown) {
  auto z3 = cyclic_translation(3);
  EXPECT_EQ(open_support(chi(z3, {0, 1})), (PointSet{0, 1}));
  EXPECT_TRUE(open_support(Func::zero(3)).empty());
  EXPECT_TRUE(open_support(pos_cutdown(chi(z3, {0}), 1)).empty());
  EXPECT_EQ(pos_cutdown(chi(z3, {0}), Rational(1, 2)), Func::indicator(3, {0}, RadScalar(Rational(1, 2))));
  auto f = chi(z3, {0, 1});
  EXPECT_EQ(pos_cutdown(f, 0), f);
  Func g(2);
  g[0] = RadScalar(1);
  g[1] = RadScalar(Rational(1, 3));
  auto cut = pos_cutdown(g, Rational(1, 2));
  EXPECT_EQ(cut[0], RadScalar(Rational(1, 2)));
  EXPECT_TRUE(cut[1].is_zero());
}

TEST(Representation, RegularRep) {
  auto z3 = cyclic_translation(3);
  auto id = regular_rep(CrossedElement::unit(z3));
  for (std::size_t i = 0; i < id.rows; ++i)
    for (std::size_t j = 0; j < id.cols; ++j) EXPECT_EQ(id(i, j), RadScalar(i == j ? 1 : 0));
  auto pu = regular_rep(CrossedElement::u(z3, 1));
  for (std::size_t i = 0; i < pu.rows; ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < pu.cols; ++j) ones += pu(i, j) == RadScalar(1);
    EXPECT_EQ(ones, 1);
  }
}

TEST(Representation, RankOfSquareMatchesEnumeration) {
  for (const auto& [name, sys] : testkit::small_free_systems()) {
    for (std::size_t g = 0; g < sys->group_order(); ++g) {
      auto a = term(sys, {0}, g);
      auto sq = adjoint(a) * a;
      // a^*a = chi_{g^{-1}.0}; its diagonal in l^2(G x X) is nonzero at (h, x) with h.x = g^{-1}.0
      const std::size_t target = sys->act(sys->group().inv(g), 0);
      std::size_t expected = 0;
      for (std::size_t h = 0; h < sys->group_order(); ++h)
        for (std::size_t x = 0; x < sys->num_points(); ++x) expected += sys->act(h, x) == target;
      EXPECT_EQ(matrix_rank(regular_rep(sq)), expected) << name;
    }
  }
}

TEST(Representation, OrbitBlocks) {
  auto z3 = cyclic_translation(3);
  auto blocks = orbit_block_decomposition(CrossedElement::u(z3, 1));
  ASSERT_EQ(blocks.size(), 1u);
  ASSERT_EQ(blocks[0].rows, 3u);
  for (std::size_t h = 0; h < 3; ++h) EXPECT_EQ(blocks[0]((h + 1) % 3, h), RadScalar(1));
  EXPECT_EQ(orbit_block_decomposition(CrossedElement::unit(double_swap())).size(), 2u);
  for (const auto& b : orbit_block_decomposition(CrossedElement::unit(double_swap()))) {
    EXPECT_EQ(b.rows, 2u);
    EXPECT_EQ(b(0, 0), RadScalar(1));
    EXPECT_EQ(b(1, 1), RadScalar(1));
    EXPECT_TRUE(b(0, 1).is_zero());
  }
  EXPECT_THROW(orbit_block_decomposition(CrossedElement::unit(trivial_action(cyclic_group_spec(2), 1))), NotFree);
}

TEST(Representation, OperatorNorm) {
  auto z2 = cyclic_translation(2);
  EXPECT_NEAR(operator_norm(CrossedElement::unit(z2)).value, 1.0, 1e-9);
  EXPECT_NEAR(operator_norm(CrossedElement::u(z2, 1)).value, 1.0, 1e-9);
  auto a = term(z2, {0}, 0) + term(z2, {0}, 1);
  EXPECT_NEAR(operator_norm(a).value, std::sqrt(2.0), 1e-9);
  EXPECT_EQ(operator_norm(CrossedElement::zero(z2)).value, 0.0);
}

TEST(CrossedProperty, RingAxiomsExact) {
  testkit::Rng r(31);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 150; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    auto b = testkit::random_element(r, sys);
    auto c = testkit::random_element(r, sys);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(adjoint(a * b), adjoint(b) * adjoint(a));
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_EQ(CrossedElement::unit(sys) * a, a);
  }
}

TEST(CrossedProperty, RepresentationIsStarHomomorphism) {
  testkit::Rng r(32);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 60; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    auto b = testkit::random_element(r, sys);
    EXPECT_EQ(regular_rep(a * b), matmul(regular_rep(a), regular_rep(b)));
    EXPECT_EQ(regular_rep(adjoint(a)), conj_transpose(regular_rep(a)));
  }
}

TEST(CrossedProperty, ConditionalExpectation) {
  testkit::Rng r(33);
  auto systems = testkit::small_free_systems();
  for (int trial = 0; trial < 150; ++trial) {
    const auto& sys = r.pick(systems).sys;
    auto a = testkit::random_element(r, sys);
    auto e = CrossedElement::diagonal(sys, cond_expectation(a));
    EXPECT_EQ(cond_expectation(e), cond_expectation(a));
    EXPECT_LE(operator_norm(e).value, operator_norm(a).value + 1e-9);
    EXPECT_EQ(cond_expectation(adjoint(a) * a).is_zero(), a.is_zero());
  }
}

TEST(FuncProperty, SupportInclusions) {
  testkit::Rng r(34);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + r.below(8);
    auto f = testkit::random_func(r, n, r.subset(n));
    auto g = testkit::random_func(r, n, r.subset(n));
    EXPECT_TRUE(open_support(f * g).subset_of(open_support(f) & open_support(g)));
    auto p = testkit::random_positive_func(r, n, r.subset(n));
    EXPECT_TRUE(open_support(pos_cutdown(p, Rational(1, 2))).subset_of(open_support(p)));
  }
}
