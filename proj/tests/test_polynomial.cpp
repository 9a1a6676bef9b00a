#include <gtest/gtest.h>

#include "eulertop/polynomial.hpp"

using namespace eulertop;

namespace {

Poly3 x(int i) { return Poly3::variable(i); }

}  // namespace

TEST(Poly3, ParsePrintRoundTrip) {
  for (const char* text : {"x1*x2^2*x3 - 3/2*x1^2", "2*(x1 + x2)^3", "-x3 + 7", "0", "1/3*x1*x2*x3 - x2^4"}) {
    const Poly3 p = Poly3::parse(text);
    EXPECT_EQ(Poly3::parse(p.str()), p) << text;
  }
}

TEST(Poly3, ParseAcceptsDecimalsAndAliases) {
  EXPECT_EQ(Poly3::parse("0.5*x1"), Rational(1, 2) * x(1));
  EXPECT_EQ(Poly3::parse("x1 x2"), x(1) * x(2));
  EXPECT_EQ(Poly3::parse("x*y + z"), x(1) * x(2) + x(3));
}

TEST(Poly3, Arithmetic) {
  const Poly3 a = x(1) + x(2);
  EXPECT_EQ(a * a, x(1).pow(2) + Rational(2) * x(1) * x(2) + x(2).pow(2));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((-a).coefficient({1, 0, 0}), -1);
  EXPECT_EQ(a.pow(0), Poly3::constant(1));
}

TEST(Poly3, Degrees) {
  const Poly3 p = Poly3::parse("x1^3*x3 + x2^2");
  EXPECT_EQ(p.degree(), 4);
  EXPECT_EQ(p.degree_in(1), 3u);
  EXPECT_EQ(p.degree_in(3), 1u);
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_EQ(Poly3{}.degree(), -1);
}

TEST(Poly3, SubstituteCasimir) {
  // P(x1, x2, z) with z -> x1^2 + x2^2 + x3^2.
  const Poly3 p = x(1) * x(3);
  const Poly3 q = p.substitute(3, casimir_poly());
  EXPECT_EQ(q, x(1).pow(3) + x(1) * x(2).pow(2) + x(1) * x(3).pow(2));
}

TEST(Poly3, DerivativeAndEvaluation) {
  const Poly3 p = Poly3::parse("x1^2*x2 - 4*x3");
  EXPECT_EQ(p.derivative(1), Rational(2) * x(1) * x(2));
  EXPECT_EQ(p.evaluate_exact(2, 3, Rational(1, 2)), 10);
  EXPECT_DOUBLE_EQ(p.evaluate(2.0, 3.0, 0.5), 10.0);
  EXPECT_DOUBLE_EQ(CompiledPoly(p)(State3{1.5, -2.0, 0.25}), 1.5 * 1.5 * -2.0 - 1.0);
}

TEST(Poly3, DegreeOverflowIsRejected) {
  EXPECT_THROW(Poly3::parse("x1^9", 8), DegreeOverflowError);
  EXPECT_NO_THROW(Poly3::parse("x1^9", 12));
  const Poly3 capped = Poly3::parse("x1^5", 8);
  EXPECT_THROW(capped * capped, DegreeOverflowError);
  EXPECT_THROW(Poly3::parse("x1^65"), DegreeOverflowError);
}

TEST(Poly3, ParseErrors) {
  for (const char* bad : {"", "x4", "x1 +", "(x1", "x1^-2", "x1^x2", "1/0", "w"})
    EXPECT_THROW(Poly3::parse(bad), InvalidSpecError) << '"' << bad << '"';
}
