#include <gtest/gtest.h>

#include <numbers>

#include "eulertop/melnikov.hpp"
#include "eulertop/scenarios.hpp"
#include "oracles.hpp"

using namespace eulertop;

namespace {

Poly3 x(int i) { return Poly3::variable(i); }

/// Oracle value of I(h) for a polynomial tangent field on the sphere of radius c.
double oracle_tangent(const TangentFieldSpec& t, const InertiaParams& p, double c, double h) {
  const CompiledPoly A(t.A()), B(t.B());
  const double a = std::sqrt(2.0 * h / -p.beta()), b = std::sqrt(2.0 * h / p.alpha());
  return oracle::ellipse_integral(
      [&](double x1, double x2, double w, double& f1, double& f2) {
        f1 = A(x1, x2, w);
        f2 = B(x1, x2, w);
      },
      a, b, c);
}

}  // namespace

TEST(ClosedForm, GainFieldMatchesFormula) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  const auto t = gain_field(2);
  const MelnikovPoly m = melnikov_allspheres(t.A(), t.B(), p, 5.0);
  ASSERT_EQ(m.exact_coeffs.size(), 3u);
  EXPECT_EQ(m.exact_coeffs[0], 0);
  const double a = p.alpha(), b = p.beta();
  // I = 2 pi / sqrt(-alpha beta) * h (-2 alpha beta + (alpha + beta) h) up to a common factor: root 2ab/(a+b).
  const auto u = m.u_coefficients();
  EXPECT_NEAR(-u[1] / u[2], 2 * a * b / (a + b), 1e-12);
  EXPECT_NEAR(gain_field_root(p), 4.0, 1e-12);
  for (double h : {0.5, 1.0, 2.0, 4.0, 5.5}) EXPECT_NEAR(m(h), oracle_tangent(t, p, 5.0, h), 1e-9 * (1 + std::abs(m(h))));
}

TEST(ClosedForm, TwoMonomialField) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  const double c = 1.0;
  const auto t = two_monomial_field(1, -1);
  const MelnikovPoly m = melnikov_allspheres(t.A(), t.B(), p, c);
  const double lambda = two_monomial_lambda(p, 1, -1);
  for (double h : {0.05, 0.1, 0.2}) {
    const double expected = lambda * h * h * (p.alpha() * p.beta() * c * c + (p.alpha() - p.beta()) * h);
    EXPECT_NEAR(m(h), expected, 1e-12 * std::abs(expected) + 1e-15);
    EXPECT_NEAR(m(h), oracle_tangent(t, p, c, h), 1e-10);
  }
  const auto root = positive_roots(m.body).roots;
  ASSERT_EQ(root.size(), 1u);
  EXPECT_NEAR(root[0].h, two_monomial_root(p, c), 1e-12);
}

TEST(ClosedForm, OddHomogeneousDegreesVanish) {
  FieldSampler sampler(11);
  for (unsigned m : {3u, 5u, 7u})
    for (int k = 0; k < 4; ++k) {
      const auto t = homogeneous_family_field(sampler, m);
      const auto p = sampler.center_params();
      EXPECT_TRUE(melnikov_allspheres(t.A(), t.B(), p, 1.3).identically_zero()) << "m = " << m;
    }
}

TEST(ClosedForm, EvenHomogeneousDegreesGiveOneTerm) {
  FieldSampler sampler(12);
  const auto p = InertiaParams::from_moments(3, 2, 1);
  for (unsigned m : {2u, 4u, 6u}) {
    const auto t = homogeneous_family_field(sampler, m);
    const MelnikovPoly mp = melnikov_allspheres(t.A(), t.B(), p, 1.0);
    if (mp.identically_zero()) continue;
    EXPECT_LE(mp.degree_n, m);
    for (double h : {0.05, 0.15}) EXPECT_NEAR(mp(h), oracle_tangent(t, p, 1.0, h), 1e-10);
  }
}

TEST(ClosedForm, SemisphereAgreesWithOracle) {
  const auto p = InertiaParams::from_moments(4, 2, 1.5);
  const double c = 1.2;
  const SemisphereSpec spec{Poly3::parse("x1 + x1*x2^2 - 2*x1^3*x3 + x2"), Poly3::parse("x2*x3 + 3*x1^2*x2"), Poly3{}, c};
  const MelnikovPoly m = melnikov_semisphere(spec.P, spec.Q, p, c);
  const FieldEvaluator f = FieldEvaluator::semisphere(spec);
  const double limit = disk_level_limit(p, c);
  for (double frac : {0.05, 0.3, 0.7, 0.95}) {
    const double h = frac * limit;
    const double a = std::sqrt(2.0 * h / -p.beta()), b = std::sqrt(2.0 * h / p.alpha());
    const double expected = oracle::ellipse_integral(
        [&](double x1, double x2, double w, double& f1, double& f2) {
          const State3 v = f({x1, x2, w});
          f1 = v.x1;
          f2 = v.x2;
        },
        a, b, c);
    EXPECT_NEAR(m(h), expected, 1e-10 * (1 + std::abs(expected)));
  }
}

TEST(ClosedForm, NegativeAlpha) {
  const auto p = InertiaParams::from_moments(1, 2, 3);
  ASSERT_LT(p.alpha(), 0);
  const auto t = gain_field(1);
  const MelnikovPoly m = melnikov_allspheres(t.A(), t.B(), p, 1.0);
  EXPECT_THROW(m(0.1), DomainError);
  const FieldEvaluator f = FieldEvaluator::polynomial(t.A(), t.B(), t.C());
  for (double frac : {0.2, 0.6}) {
    const double h = -frac * disk_level_limit(p, 1.0);
    EXPECT_NEAR(m(h), melnikov_quadrature(f, p, 1.0, h), 1e-10);
  }
}

TEST(ClosedForm, StructuralErrors) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  EXPECT_THROW(melnikov_allspheres(x(1) * x(3).pow(2), x(2), p, 1.0), StructuralError);
  EXPECT_THROW(ellipse_line_integral(x(3), Poly3{}, p), StructuralError);
  EXPECT_FALSE(x3_form(x(1), x(2)).has_value());
  EXPECT_TRUE(x3_form(x(1) * x(3), x(2) * x(3).pow(3)).has_value());
}

TEST(ClosedForm, ScalingFieldScalesIntegral) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  const auto t = gain_field(2);
  const MelnikovPoly m1 = melnikov_allspheres(t.A(), t.B(), p, 2.0);
  const MelnikovPoly m3 = melnikov_allspheres(Rational(3) * t.A(), Rational(3) * t.B(), p, 2.0);
  EXPECT_NEAR(m3(0.7), 3.0 * m1(0.7), 1e-12);
  EXPECT_NEAR(positive_roots(m3.body).roots[0].h, positive_roots(m1.body).roots[0].h, 1e-14);
}

TEST(Classification, Reasons) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  EXPECT_EQ(classify_level(p, 5.0, 4.0).reason, "ok");
  EXPECT_TRUE(classify_level(p, 5.0, 4.0).verifiable());
  EXPECT_EQ(classify_level(p, 5.0, -1.0).reason, "alpha*h <= 0");
  EXPECT_FALSE(classify_level(p, 2.0, 4.0).admissible);
  EXPECT_FALSE(classify_level(p, 5.0, 4.0, false).verifiable());
  EXPECT_NEAR(disk_level_limit(p, 2.0), 0.5 * 4.0 * 0.5, 1e-15);
}

TEST(Report, AdmissibleLevels) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  const auto t = gain_field(2);
  const auto r = admissible_levels(melnikov_allspheres(t.A(), t.B(), p, 5.0));
  EXPECT_EQ(r.verdict, Verdict::Roots);
  EXPECT_EQ(r.verifiable_count(), 1);
  const auto zero = admissible_levels(melnikov_allspheres(Poly3{}, Poly3{}, p, 5.0));
  EXPECT_EQ(zero.verdict, Verdict::Inconclusive);
}

TEST(Fallback, QuadratureScanFindsTheSameRoot) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  // Gain field plus a term outside the x3 form whose integral vanishes.
  const auto g = gain_field(2);
  const auto extra = build_cross_product(Poly3{}, Poly3{}, x(1));
  const auto t = TangentFieldSpec::make(g.A() + extra.A(), g.B() + extra.B(), g.C() + extra.C());
  ASSERT_FALSE(x3_form(t.A(), t.B()).has_value());
  const auto analysis = analyze(PerturbedSystem(p, t, 0.0), 5.0);
  EXPECT_FALSE(analysis.closed_form.has_value());
  ASSERT_EQ(analysis.report.verifiable_count(), 1);
  EXPECT_NEAR(analysis.report.levels[0].h_star, 4.0, 1e-8);
}

TEST(Analyze, KindRules) {
  const auto p = InertiaParams::from_moments(3, 2, 1);
  EXPECT_THROW(analyze(PerturbedSystem(p, GenericFieldSpec{x(1), x(2), x(3)}, 0.0), 1.0), InvalidSpecError);
  EXPECT_THROW(analyze(PerturbedSystem(p, gain_field(1), 0.0)), InvalidSpecError);
  const SemisphereSpec s{x(1), Poly3{}, Poly3{}, 2.0};
  EXPECT_THROW(analyze(PerturbedSystem(p, s, 0.0), 3.0), InvalidSpecError);
  EXPECT_NO_THROW(analyze(PerturbedSystem(p, s, 0.0)));
}
