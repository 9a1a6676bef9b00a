#include <gtest/gtest.h>

#include "eulertop/perturbation.hpp"
#include "eulertop/scenarios.hpp"

using namespace eulertop;

namespace {

Poly3 x(int i) { return Poly3::variable(i); }

}  // namespace

TEST(TangentField, RejectsNonTangentField) {
  EXPECT_THROW(TangentFieldSpec::make(x(1), Poly3{}, Poly3{}), InvalidSpecError);
  EXPECT_NO_THROW(TangentFieldSpec::make(x(2), -x(1), Poly3{}));
}

TEST(TangentField, CrossProductIsTangent) {
  FieldSampler sampler(3);
  for (unsigned m = 2; m <= 6; ++m) {
    const auto cp = sampler.homogeneous_cross_product(m);
    const auto t = build_cross_product(cp);
    EXPECT_TRUE(tangency_residual(t.A(), t.B(), t.C()).is_zero()) << "m = " << m;
  }
}

TEST(Semisphere, ResidualIsCasimirShiftTimesR) {
  const SemisphereSpec spec{Poly3::parse("x1*x2 + x3"), Poly3::parse("x1^2 - x3^2"), Poly3::parse("x1 + 2"), 1.5};
  const Poly3 residual = semisphere_tangency_residual(spec);
  // x . F = (D - c^2) R / 2 on x3 != 0, written with D as a polynomial.
  const Poly3 expected =
      Rational(1, 2) * (casimir_poly() - Poly3::constant(exact(spec.c * spec.c))) * compose_with_casimir(spec.R);
  EXPECT_EQ(residual, expected);
}

TEST(Semisphere, FieldIsTangentOnTheSphere) {
  const SemisphereSpec spec{Poly3::parse("x1*x3 - 1"), Poly3::parse("x2^3"), Poly3::parse("x1"), 2.0};
  const FieldEvaluator f = FieldEvaluator::semisphere(spec);
  const State3 s{0.6, -0.8, std::sqrt(4.0 - 1.0)};
  EXPECT_NEAR(dot(f(s), s), 0.0, 1e-12);
  EXPECT_THROW(f({1.0, 0.0, 0.0}), DomainError);
}

TEST(Kinds, DispatchAndEvaluation) {
  EXPECT_EQ(kind_of(gain_field(2)), SpecKind::Tangent);
  EXPECT_EQ(kind_of(CrossProductSpec{x(1), x(2), x(3)}), SpecKind::CrossProduct);
  EXPECT_EQ(kind_of(GenericFieldSpec{}), SpecKind::Generic);
  const auto p = InertiaParams::from_moments(3, 2, 1);
  PerturbedSystem sys(p, GenericFieldSpec{x(1), Poly3{}, Poly3{}}, 0.5);
  const State3 s{1.0, 2.0, 3.0};
  const State3 base = euler_field(p, s);
  EXPECT_DOUBLE_EQ(sys(s).x1, base.x1 + 0.5);
  EXPECT_DOUBLE_EQ(sys.with_epsilon(0.0)(s).x1, base.x1);
  EXPECT_THROW(PerturbedSystem(p, GenericFieldSpec{}, std::nan("")), InvalidSpecError);
}
