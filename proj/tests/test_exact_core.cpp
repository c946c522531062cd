#include <gtest/gtest.h>

#include "flatorbit/diff_op.hpp"
#include "flatorbit/multipoly.hpp"
#include "flatorbit/rat_matrix.hpp"
#include "flatorbit/rational.hpp"

using namespace flatorbit;

TEST(Rational, ParseNormalisesSignAndLowestTerms) {
  EXPECT_EQ(Rational::parse("-6/8").str(), "-3/4");
  EXPECT_THROW(Rational::parse("6/-8"), ParseError);
  EXPECT_EQ(Rational::parse(" 10/5 ").str(), "2");
  EXPECT_TRUE(Rational::parse("0/7").is_zero());
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
}

TEST(Rational, ArithmeticIsExact) {
  Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 2) * Rational(2, 3), third);
  EXPECT_EQ(binomial(6, 2), Rational(15));
  EXPECT_EQ(factorial(5), Rational(120));
}

TEST(MultiPoly, ProductOfShiftedLinearFactors) {
  auto x = MultiPoly::variable(VarList{"η1"}, 0);
  auto half = MultiPoly::constant(Rational(1, 2), x.shared_vars());
  auto p = (x + half) * (x - half);
  EXPECT_EQ(p.coefficient({2}), Rational(1));
  EXPECT_EQ(p.coefficient({1}), Rational(0));
  EXPECT_EQ(p.constant_term(), Rational(-1, 4));
  EXPECT_EQ(p.degree(), 2);
}

TEST(MultiPoly, PartialDerivativeAndEvaluation) {
  VarList v{"a", "b"};
  auto a = MultiPoly::variable(v, 0), b = MultiPoly::variable(v, 1);
  auto p = a * a * b + Rational(3) * b;
  auto da = partial(p, 0);
  std::vector<Rational> pt{Rational(2), Rational(-1)};
  EXPECT_EQ(da.evaluate(pt), Rational(-4));
  EXPECT_EQ(partial(p, "b").evaluate(pt), Rational(7));
  EXPECT_EQ(p.evaluate(pt), Rational(-7));
}

TEST(MultiPoly, CompositionWithPolynomialMap) {
  VarList v{"u"};
  auto u = MultiPoly::variable(v, 0);
  PolyMap square(v, {"u"}, {u * u});
  auto p = u * u + u;
  auto q = compose(p, square);
  EXPECT_EQ(q.coefficient({4}), Rational(1));
  EXPECT_EQ(q.coefficient({2}), Rational(1));
  EXPECT_EQ(q.size(), 2u);
}

TEST(RatMatrix, NullspaceOfRankTwoMatrix) {
  RatMatrix m = RatMatrix::from_rows({{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(1), Rational(1)}}, 3);
  EXPECT_EQ(m.rank(), 2u);
  auto ns = m.nullspace();
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(m * ns[0]));
  EXPECT_EQ(ns[0][2], Rational(1));
  EXPECT_EQ(ns[0][1], Rational(-1));
  EXPECT_EQ(ns[0][0], Rational(1));
}

TEST(RatMatrix, InverseRoundTrip) {
  RatMatrix m = RatMatrix::from_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}}, 2);
  EXPECT_EQ(m * m.inverse(), RatMatrix::identity(2));
}

TEST(DiffOp, ParsePrintRoundTrip) {
  auto vars = detail::make_vars({"η1", "η2", "η3", "η4"});
  auto op = DiffOp::parse("∂2 + η1·∂3 + (−η2 + η1^2/2)·∂4", vars);
  EXPECT_EQ(DiffOp::parse(op.str(), vars), op);
  EXPECT_EQ(op.order(), 1);
  EXPECT_EQ(op.coefficient(1), MultiPoly::constant(Rational(1), vars));
}

TEST(DiffOp, CommutatorOfPositionAndDerivative) {
  auto vars = detail::make_vars({"η1"});
  auto d = DiffOp::partial(vars, 0);
  auto x = DiffOp::multiplication(MultiPoly::variable(vars, 0), vars);
  EXPECT_EQ(d.commutator(x), DiffOp::identity(vars));
}
