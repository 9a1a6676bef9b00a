#include <gtest/gtest.h>

#include <random>

#include "eulertop/model.hpp"

using namespace eulertop;

TEST(InertiaParams, RatesSumToZero) {
  const auto p = InertiaParams::from_moments(3.0, 2.0, 1.0);
  EXPECT_EQ(p.alpha_exact() + p.beta_exact() + p.gamma_exact(), 0);
  EXPECT_EQ(p.alpha_exact(), Rational(1, 2));
  EXPECT_EQ(p.beta_exact(), Rational(-2, 3));
  EXPECT_TRUE(p.has_center());
  EXPECT_EQ(p.alpha_sign(), 1);
}

TEST(InertiaParams, RatesFormRecoversMoments) {
  const auto p = InertiaParams::from_rates(0.5, -2.0 / 3.0, 1.0);
  EXPECT_NEAR(p.mu1(), 3.0, 1e-12);
  EXPECT_NEAR(p.mu2(), 2.0, 1e-12);
  const auto q = InertiaParams::from_rates(-0.25, 0.5, 2.0);
  EXPECT_EQ(q.alpha_exact(), Rational(-1, 4));
  EXPECT_EQ(q.alpha_sign(), -1);
}

TEST(InertiaParams, Errors) {
  EXPECT_THROW(InertiaParams::from_moments(1.0, -2.0, 3.0), InvalidSpecError);
  EXPECT_THROW(InertiaParams::from_moments(3.0, 1.0, 1.0), DegenerateTopError);
  EXPECT_THROW(InertiaParams::from_moments(3.0, 1.0, 2.0), InvalidSpecError);
  EXPECT_NO_THROW(InertiaParams::from_moments(3.0, 1.0, 2.0, InertiaParams::Check::Dynamics));
  EXPECT_THROW(InertiaParams::from_rates(2.0, -0.1, 1.0), InvalidSpecError);
}

class ModelIdentities : public ::testing::Test {
 protected:
  std::mt19937_64 rng{42};
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

TEST_F(ModelIdentities, FieldIsPoissonGradientOfEnergy) {
  for (int k = 0; k < 50; ++k) {
    const auto p = InertiaParams::from_moments(uniform(0.5, 3), uniform(0.5, 3), uniform(0.5, 3),
                                               InertiaParams::Check::Dynamics);
    const State3 s{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
    const State3 f = euler_field(p, s);
    const State3 g = eulertop::apply(structure_matrix(s), hamiltonian_gradient(p, s));
    EXPECT_NEAR(f.x1, g.x1, 1e-12);
    EXPECT_NEAR(f.x2, g.x2, 1e-12);
    EXPECT_NEAR(f.x3, g.x3, 1e-12);
    const State3 zero = eulertop::apply(structure_matrix(s), casimir_gradient(s));
    EXPECT_NEAR(std::abs(zero.x1) + std::abs(zero.x2) + std::abs(zero.x3), 0.0, 1e-12);
    EXPECT_NEAR(dot(f, hamiltonian_gradient(p, s)), 0.0, 1e-11);
    EXPECT_NEAR(dot(f, s), 0.0, 1e-11);
  }
}

TEST_F(ModelIdentities, ChartRoundTripAndReducedEnergy) {
  const auto p = InertiaParams::from_moments(3.0, 2.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const State3 s{uniform(-1, 1), uniform(-1, 1), uniform(0.1, 1)};
    const ChartPoint cp = chart_forward(s, std::sqrt(casimir(s)));
    const State3 back = chart_inverse(cp);
    EXPECT_NEAR(back.x3, s.x3, 1e-12);
    // On the sphere, energy = c^2/(2 mu3) - H(x1, x2).
    EXPECT_NEAR(hamiltonian(p, s), energy_level(p, cp.c, reduced_hamiltonian(p, cp)), 1e-12);
  }
  EXPECT_THROW(chart_forward({0.1, 0.2, -0.3}, 1.0), DomainError);
  EXPECT_THROW(chart_inverse({1.0, 0.5, 1.0, 1.0}), DomainError);
}
