#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "infsup/errors.hpp"
#include "infsup/expression.hpp"

namespace infsup {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ExpressionParse, ArithmeticAndPrecedence) {
  EXPECT_EQ(Expression::parse("1 + 2 * 3")(0, 0), 7.0);
  EXPECT_EQ(Expression::parse("(1 + 2) * 3")(0, 0), 9.0);
  EXPECT_EQ(Expression::parse("2 ^ 3 ^ 2")(0, 0), 512.0);
  EXPECT_EQ(Expression::parse("-2 ^ 2")(0, 0), -4.0);
  EXPECT_EQ(Expression::parse("8 / 4 / 2")(0, 0), 1.0);
  EXPECT_EQ(Expression::parse("1e-1 * 10")(0, 0), 1.0);
  EXPECT_NEAR(Expression::parse("x*y + sin(pi*x)")(0.5, 4.0), 3.0, 1e-15);
}

TEST(ExpressionParse, ErrorsNameTheColumn) {
  for (const char* bad : {"1 +", "foo(x)", "(x", "x y", "sin x", "", "2 * )"}) {
    try {
      Expression::parse(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
    }
  }
}

TEST(ExpressionDerivative, MatchesHandDerivatives) {
  const Expression u = Expression::parse("sin(pi*x)*sin(pi*y)");
  const Expression uxx = u.derivative('x').derivative('x');
  const Expression uxy = u.derivative('x').derivative('y');
  for (const double x : {0.1, 0.37, 0.8}) {
    for (const double y : {0.2, 0.55}) {
      EXPECT_NEAR(uxx(x, y), -kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y), 1e-12);
      EXPECT_NEAR(uxy(x, y), kPi * kPi * std::cos(kPi * x) * std::cos(kPi * y), 1e-12);
    }
  }
}

TEST(ExpressionDerivative, MatchesFiniteDifferences) {
  const char* cases[] = {"x^3*y - 2/x", "exp(x*y)/(1+y^2)", "sqrt(1+x^2)*log(2+y)",
                         "tan(x/3) - cos(y)^2", "x^y", "(1+x)^(0.5*y)"};
  for (const char* text : cases) {
    const Expression e = Expression::parse(text);
    const double x = 0.7;
    const double y = 1.3;
    const double h = 1e-6;
    EXPECT_NEAR(e.derivative('x')(x, y), (e(x + h, y) - e(x - h, y)) / (2 * h), 1e-6) << text;
    EXPECT_NEAR(e.derivative('y')(x, y), (e(x, y + h) - e(x, y - h)) / (2 * h), 1e-6) << text;
  }
}

TEST(ExpressionAlgebra, ConstantsFold) {
  const Expression c = Expression::parse("2*pi - pi");
  EXPECT_TRUE(c.is_constant());
  EXPECT_NEAR(c(0, 0), kPi, 1e-15);
  EXPECT_TRUE(Expression::parse("x").derivative('y').is_constant());
  const Expression sum = Expression::parse("x") * Expression::constant(3.0) + Expression::parse("y");
  EXPECT_EQ(sum(1.0, 2.0), 5.0);
  EXPECT_EQ((-sum)(1.0, 2.0), -5.0);
  EXPECT_EQ((sum / Expression::constant(5.0))(1.0, 2.0), 1.0);
}

}  // namespace
}  // namespace infsup
