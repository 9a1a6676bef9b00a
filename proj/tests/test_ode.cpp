#include <gtest/gtest.h>

#include <cmath>

#include "eulertop/model.hpp"
#include "eulertop/ode.hpp"

using namespace eulertop;

namespace {

auto oscillator = [](const Vec<2>& y) { return Vec<2>{y[1], -y[0]}; };

}  // namespace

TEST(Dop853, HarmonicOscillatorAccuracy) {
  const auto tr = integrate<2>(oscillator, {1.0, 0.0}, 0.0, 100.0);
  EXPECT_NEAR(tr.y.back()[0], std::cos(100.0), 2e-9);
  EXPECT_NEAR(tr.y.back()[1], -std::sin(100.0), 2e-9);
  EXPECT_DOUBLE_EQ(tr.t.back(), 100.0);
}

TEST(Dop853, DenseOutputAccuracy) {
  double worst = 0.0;
  integrate_visit<2>(oscillator, {1.0, 0.0}, 0.0, 20.0, {}, [&](const DenseStep<2>& d) {
    for (int k = 1; k < 8; ++k) {
      const double t = d.t0 + d.h * k / 8;
      worst = std::max(worst, std::abs(d(t)[0] - std::cos(t)));
    }
    return true;
  });
  EXPECT_LT(worst, 1e-9);
}

TEST(Dop853, VisitorCanStopEarly) {
  int steps = 0;
  const auto y = integrate_visit<2>(oscillator, {1.0, 0.0}, 0.0, 100.0, {}, [&](const DenseStep<2>&) {
    return ++steps < 3;
  });
  EXPECT_EQ(steps, 3);
  EXPECT_GT(y[0] * y[0] + y[1] * y[1], 0.99);
}

TEST(Dop853, MaxStepsExceeded) {
  IntegratorConfig cfg;
  cfg.max_steps = 5;
  EXPECT_THROW(integrate<2>(oscillator, {1.0, 0.0}, 0.0, 100.0, cfg), NumericalError);
}

TEST(Dop853, InvalidConfig) {
  IntegratorConfig cfg;
  cfg.rtol = 0.0;
  EXPECT_THROW(integrate<2>(oscillator, {1.0, 0.0}, 0.0, 1.0, cfg), InvalidSpecError);
  cfg = {};
  cfg.max_step = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidSpecError);
}

TEST(Dop853, MaxStepIsHonoured) {
  IntegratorConfig cfg;
  cfg.max_step = 0.05;
  const auto tr = integrate<2>(oscillator, {1.0, 0.0}, 0.0, 1.0, cfg);
  for (std::size_t k = 1; k < tr.t.size(); ++k) EXPECT_LE(tr.t[k] - tr.t[k - 1], 0.05 + 1e-15);
}

TEST(EulerFlow, SymmetricTopKeepsX3) {
  const auto p = InertiaParams::from_moments(2.0, 2.0, 1.0, InertiaParams::Check::Dynamics);
  const auto f = [&](const Vec<3>& y) { return to_array(euler_field(p, from_array(y))); };
  const auto tr = integrate<3>(f, {0.3, -0.4, 0.8}, 0.0, 50.0);
  for (const auto& y : tr.y) EXPECT_DOUBLE_EQ(y[2], 0.8);
}

TEST(EulerFlow, ConservesEnergyAndCasimir) {
  const auto p = InertiaParams::from_moments(3.0, 2.0, 1.0);
  const auto f = [&](const Vec<3>& y) { return to_array(euler_field(p, from_array(y))); };
  const State3 s0{0.5, -0.7, 0.4};
  const auto tr = integrate<3>(f, to_array(s0), 0.0, 100.0);
  for (const auto& y : tr.y) {
    EXPECT_NEAR(hamiltonian(p, from_array(y)), hamiltonian(p, s0), 1e-9);
    EXPECT_NEAR(casimir(from_array(y)), casimir(s0), 1e-9);
  }
}
