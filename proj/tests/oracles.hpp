#pragma once

// Test-side reference computations. Nothing here calls into the code paths it checks.

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int factorial(unsigned n) {
  cpp_int f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Gamma(n + 1/2) / sqrt(pi) = (2n)! / (4^n n!).
inline cpp_rational half_gamma_over_sqrt_pi(unsigned n) {
  return cpp_rational(factorial(2 * n), cpp_int(1) << (2 * n)) / cpp_rational(factorial(n));
}

/// int_0^{2pi} sin^i cos^j / pi = 2 Gamma((i+1)/2) Gamma((j+1)/2) / (pi Gamma((i+j)/2 + 1)); zero for odd i or j.
inline cpp_rational moment_over_pi(unsigned i, unsigned j) {
  if (i % 2 == 1 || j % 2 == 1) return 0;
  return 2 * half_gamma_over_sqrt_pi(i / 2) * half_gamma_over_sqrt_pi(j / 2) / cpp_rational(factorial((i + j) / 2));
}

/// Same formula in floating point through std::tgamma.
inline double moment_gamma(unsigned i, unsigned j) {
  if (i % 2 == 1 || j % 2 == 1) return 0.0;
  return 2.0 * std::tgamma((i + 1) / 2.0) * std::tgamma((j + 1) / 2.0) / std::tgamma((i + j) / 2.0 + 1.0);
}

/// Periodic trapezoid rule on [0, 2pi); exact for trigonometric polynomials of degree < n.
inline long double periodic_trapezoid(const std::function<long double(long double)>& f, int n) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double sum = 0.0L;
  for (int k = 0; k < n; ++k) sum += f(two_pi * k / n);
  return sum * two_pi / n;
}

/// Line integral of (F1 dy - F2 dx)/x3 around x = a cos t, y = b sin t on the sphere of radius c,
/// with F the perturbation field given as a plain callback.
inline double ellipse_integral(const std::function<void(double, double, double, double&, double&)>& field, double a,
                               double b, double c, int n = 4096) {
  auto integrand = [&](long double t) -> long double {
    const double ct = std::cos(static_cast<double>(t));
    const double st = std::sin(static_cast<double>(t));
    const double x = a * ct, y = b * st;
    const double w = std::sqrt(c * c - x * x - y * y);
    double f1 = 0.0, f2 = 0.0;
    field(x, y, w, f1, f2);
    return (static_cast<long double>(f1) * b * ct + static_cast<long double>(f2) * a * st) / w;
  };
  return static_cast<double>(periodic_trapezoid(integrand, n));
}

}  // namespace oracle
