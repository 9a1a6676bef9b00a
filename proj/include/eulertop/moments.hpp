#pragma once

#include <numbers>

#include "eulertop/rational.hpp"

namespace eulertop {

/// Integral over [0, 2pi] of sin^i(theta) cos^j(theta), stored as a rational multiple of pi.
struct TrigMoment {
  unsigned sin_power = 0;
  unsigned cos_power = 0;
  Rational pi_multiple;

  bool vanishes() const { return pi_multiple == 0; }
  double value() const { return to_double(pi_multiple) * std::numbers::pi; }
};

/// Closed form 2 Gamma((i+1)/2) Gamma((j+1)/2) / Gamma((i+j+2)/2) for even i, j and zero
/// otherwise, evaluated through W(i, j) = W(i-2, j) (i-1)/(i+j), W(i, j) = W(i, j-2) (j-1)/(i+j),
/// W(0, 0) = 2 pi.
inline TrigMoment trig_moment(unsigned i, unsigned j) {
  TrigMoment m{i, j, Rational(0)};
  if (i % 2 == 1 || j % 2 == 1) return m;
  Rational w = 2;
  for (unsigned jj = 2; jj <= j; jj += 2) w = w * (jj - 1) / jj;
  for (unsigned ii = 2; ii <= i; ii += 2) w = w * (ii - 1) / (ii + j);
  m.pi_multiple = w;
  return m;
}

}  // namespace eulertop
