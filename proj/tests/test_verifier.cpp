#include <gtest/gtest.h>

#include "eulertop/melnikov.hpp"
#include "eulertop/scenarios.hpp"
#include "eulertop/verifier.hpp"

using namespace eulertop;

namespace {

Poly3 x(int i) { return Poly3::variable(i); }

const InertiaParams& top() {
  static const InertiaParams p = InertiaParams::from_moments(3, 2, 1);
  return p;
}

}  // namespace

TEST(ReturnMap, IdentityWithoutPerturbation) {
  PerturbedSystem sys(top(), gain_field(2), 0.0);
  for (double x0 : {0.5, 1.5, 3.0}) {
    const auto r = return_map(sys, 5.0, x0);
    EXPECT_NEAR(r.x_next, x0, 1e-9);
    EXPECT_GT(r.transit_time, 0.0);
  }
}

TEST(ReturnMap, DisplacementIsLinearInEpsilon) {
  PerturbedSystem sys(top(), gain_field(2), 0.0);
  const double x0 = 1.0;
  const double d1 = displacement(sys.with_epsilon(1e-4), 5.0, x0);
  const double d2 = displacement(sys.with_epsilon(2e-4), 5.0, x0);
  ASSERT_NE(d1, 0.0);
  EXPECT_NEAR(d2 / d1, 2.0, 0.04);
}

TEST(ReturnMap, DisplacementChangesSignAtEachRoot) {
  PerturbedSystem sys(top(), gain_field(2), 1e-3);
  const double c = 5.0;
  const double x_star = section_point(top(), 4.0);
  int changes = 0;
  double prev = displacement(sys, c, 0.5);
  for (double x0 = 0.75; x0 < 4.2; x0 += 0.25) {
    const double d = displacement(sys, c, x0);
    if ((d > 0) != (prev > 0)) {
      ++changes;
      EXPECT_NEAR(x0, x_star, 0.3);
    }
    prev = d;
  }
  EXPECT_EQ(changes, 1);
}

TEST(FindCycle, GainFieldCycleNearPrediction) {
  PerturbedSystem sys(top(), gain_field(2), 1e-3);
  const auto cycle = find_cycle(sys, 5.0, 4.0);
  EXPECT_NEAR(cycle.h_num, 4.0, 1e-2);
  EXPECT_NE(cycle.stability, Stability::Unresolved);
  const auto reversed = find_cycle(sys.with_epsilon(-1e-3), 5.0, 4.0);
  EXPECT_NEAR(reversed.h_num, cycle.h_num, 1e-6);
  EXPECT_NE(reversed.stability, cycle.stability);
  EXPECT_NEAR(cycle.rho * reversed.rho, 1.0, 1e-3);
}

TEST(FindCycle, RefusesContinuum) {
  PerturbedSystem sys(top(), gain_field(2), 0.0);
  EXPECT_THROW(find_cycle(sys, 5.0, 4.0), NumericalError);
}

TEST(FindCycle, LiftClosesIn3D) {
  PerturbedSystem sys(top(), gain_field(2), 1e-3);
  const double c = 5.0;
  const auto cycle = find_cycle(sys, c, 4.0);
  const auto lift = lift_cycle(sys, c, cycle);
  EXPECT_LT(lift.distance, 1e-6 * c);
  EXPECT_GT(lift.period, 0.0);
}

TEST(FindCycle, EscapeIsADomainError) {
  PerturbedSystem sys(top(), gain_field(2), 1e-3);
  EXPECT_THROW(find_cycle(sys, 5.0, -1.0), DomainError);
  EXPECT_THROW(find_cycle(sys, 2.0, 4.0), DomainError);
}

TEST(Drift, TangentFieldPreservesCasimir) {
  PerturbedSystem sys(top(), gain_field(2), 0.1);
  EXPECT_LE(casimir_drift(sys, {0.6, 0.3, 0.5}, 100.0), 1e-9);
  const SemisphereSpec semi{x(1) * x(2), x(3), Poly3{}, 1.0};
  PerturbedSystem s2(top(), semi, 0.1);
  const State3 on{0.3, 0.2, std::sqrt(1.0 - 0.13)};
  EXPECT_LE(casimir_drift(s2, on, 20.0), 1e-8);
}

TEST(Drift, GenericFieldBreaksCasimir) {
  PerturbedSystem sys(top(), GenericFieldSpec{x(1), Poly3{}, Poly3{}}, 0.1);
  EXPECT_GT(casimir_drift(sys, {0.6, 0.5, 0.6}, 10.0), 1e-3);
}

TEST(Verify, RowsPerEpsilon) {
  PerturbedSystem sys(top(), gain_field(2), 0.0);
  const auto rows = verify_level(sys, 5.0, 4.0, {2e-3, 1e-3, 0.0});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].converged);
  EXPECT_TRUE(rows[1].converged);
  EXPECT_FALSE(rows[2].converged);
  EXPECT_NE(rows[2].status.find("continuum"), std::string::npos);
  EXPECT_LT(std::abs(rows[1].cycle->h_num - 4.0), std::abs(rows[0].cycle->h_num - 4.0));
}
