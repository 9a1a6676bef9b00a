#pragma once

// Globally adaptive Gauss-Kronrod (7, 15) quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "eulertop/error.hpp"

namespace eulertop {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Integral of |f|, the scale against which cancellation in `value` should be judged.
  double abs_value = 0.0;
  int intervals = 0;
};

namespace detail {

struct GkSegment {
  double a, b, value, error, abs_value;
  bool operator<(const GkSegment& other) const { return error < other.error; }
};

template <class F>
GkSegment gauss_kronrod15(F& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  double abs_sum = wgk[7] * std::abs(fc);
  for (int k = 0; k < 7; ++k) {
    const double dx = half * xgk[static_cast<std::size_t>(k)];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += wgk[static_cast<std::size_t>(k)] * (f1 + f2);
    abs_sum += wgk[static_cast<std::size_t>(k)] * (std::abs(f1) + std::abs(f2));
    if (k % 2 == 1) gauss += wg[static_cast<std::size_t>(k / 2)] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace detail

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  std::priority_queue<detail::GkSegment> work;
  work.push(detail::gauss_kronrod15(f, a, b));
  double value = work.top().value;
  double error = work.top().error;
  double abs_value = work.top().abs_value;
  int intervals = 1;
  auto converged = [&] { return error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
  while (!converged()) {
    if (intervals >= cfg.max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: achieved error " << error << " after " << intervals
          << " intervals";
      throw NumericalError(msg.str());
    }
    const detail::GkSegment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    work.push(left);
    work.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running totals.
  value = error = abs_value = 0.0;
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    abs_value += work.top().abs_value;
    work.pop();
  }
  return {value, error, abs_value, intervals};
}

}  // namespace eulertop
