#pragma once

// Ready-made perturbations: the worked examples, homogeneous families,
// random generators for property runs, and fields with planted roots.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eulertop/melnikov.hpp"
#include "eulertop/moments.hpp"
#include "eulertop/perturbation.hpp"
#include "eulertop/polynomial.hpp"

namespace eulertop {

namespace detail {

inline Poly3 k(const Rational& v) { return Poly3::constant(v); }
inline Poly3 x(int i) { return Poly3::variable(i); }

}  // namespace detail

/// Feedback-gain field A = -x3 (k - x1 + x1 x3^2), B = x2 x3 (1 + x3^2),
/// C = k x1 + x1^2 (x3^2 - 1) - x2^2 (1 + x3^2).
inline TangentFieldSpec gain_field(const Rational& gain) {
  using detail::k;
  using detail::x;
  const Poly3 z = x(3).pow(2);
  return TangentFieldSpec::make(-(x(3) * (k(gain) - x(1) + x(1) * z)), x(2) * x(3) * (k(1) + z),
                                gain * x(1) + x(1).pow(2) * (z - k(1)) - x(2).pow(2) * (k(1) + z));
}

/// A = lambda1 x1 x2^2 x3^3, B = lambda2 x1^2 x2 x3^3, C = -(lambda1 + lambda2) x1^2 x2^2 x3^2.
inline TangentFieldSpec two_monomial_field(const Rational& lambda1, const Rational& lambda2) {
  using detail::x;
  const Poly3 x3c = x(3).pow(3);
  return TangentFieldSpec::make(lambda1 * x(1) * x(2).pow(2) * x3c, lambda2 * x(1).pow(2) * x(2) * x3c,
                                -(lambda1 + lambda2) * x(1).pow(2) * x(2).pow(2) * x(3).pow(2));
}

/// Closed-form I of two_monomial_field: pi (l1 beta - l2 alpha) / (-alpha beta)^{5/2} * h^2 (alpha beta c^2 + (alpha - beta) h).
inline double two_monomial_lambda(const InertiaParams& p, double lambda1, double lambda2) {
  return std::numbers::pi * (lambda1 * p.beta() - lambda2 * p.alpha()) / std::pow(-p.alpha() * p.beta(), 2.5);
}

inline double two_monomial_root(const InertiaParams& p, double c) {
  return p.alpha() * p.beta() * c * c / (p.beta() - p.alpha());
}

inline double gain_field_root(const InertiaParams& p) { return 2.0 * p.alpha() * p.beta() / (p.alpha() + p.beta()); }

/// Radius below which the gain-field level ellipse at its root leaves the disk (alpha + beta < 0).
inline double gain_field_critical_radius(const InertiaParams& p) {
  return 2.0 * std::sqrt(p.beta() / (p.alpha() + p.beta()));
}

// ---------------------------------------------------------------------------
// Random generators

class FieldSampler {
 public:
  explicit FieldSampler(std::uint64_t seed) : rng_(seed) {}

  /// Nonzero-ish rational with numerator in [-range, range] and denominator in {1, 2, 4}.
  Rational coefficient(int range = 5) {
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den_pick(0, 2);
    return Rational(num(rng_), 1 << den_pick(rng_));
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  /// Homogeneous polynomial of the given degree with random coefficients on monomials whose
  /// x3 exponent has parity `x3_parity` (0 even, 1 odd, -1 any).
  Poly3 homogeneous(unsigned degree, int x3_parity = -1) {
    Poly3 out;
    for (unsigned k = 0; k <= degree; ++k) {
      if (x3_parity >= 0 && static_cast<int>(k % 2) != x3_parity) continue;
      for (unsigned i = 0; i + k <= degree; ++i)
        out += Poly3::monomial({i, degree - k - i, k}, coefficient());
    }
    return out;
  }

  /// Dense polynomial in (x1, x2, z) with planar degree exactly n (i + j <= n) and z degree <= z_degree.
  Poly3 planar(unsigned n, unsigned z_degree = 1) {
    for (;;) {
      Poly3 out;
      for (unsigned k = 0; k <= z_degree; ++k)
        for (unsigned d = 0; d <= n; ++d)
          for (unsigned i = 0; i <= d; ++i) out += Poly3::monomial({i, d - i, k}, coefficient());
      unsigned top = 0;
      for (const auto& [m, c] : out.terms()) top = std::max(top, m.i + m.j);
      if (top == n) return out;
    }
  }

  /// Cross-product multipliers of degree m - 1 for which A = x3 P(x1, x2, x3^2), B = x3 Q(x1, x2, x3^2).
  CrossProductSpec homogeneous_cross_product(unsigned m) {
    if (m < 2) throw InvalidSpecError("cross-product fields need degree >= 2");
    return {homogeneous(m - 1, 0), homogeneous(m - 1, 0), homogeneous(m - 1, 1)};
  }

  /// Random (mu1, mu2, mu3) in [lo, hi]^3 with alpha*beta < 0 (mu3 extreme).
  InertiaParams center_params(double lo = 0.5, double hi = 3.0) {
    for (;;) {
      const double a = uniform(lo, hi), b = uniform(lo, hi), c = uniform(lo, hi);
      const double mu3 = integer(0, 1) ? std::min({a, b, c}) : std::max({a, b, c});
      std::vector<double> rest;
      bool skipped = false;
      for (double v : {a, b, c}) {
        if (!skipped && v == mu3) {
          skipped = true;
          continue;
        }
        rest.push_back(v);
      }
      if (integer(0, 1)) std::swap(rest[0], rest[1]);
      if (rest[0] == rest[1] || rest[0] == mu3 || rest[1] == mu3) continue;
      return InertiaParams::from_moments(rest[0], rest[1], mu3);
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Homogeneous degree-m tangent field in the x3 P(x1, x2, x3^2) form.
inline TangentFieldSpec homogeneous_family_field(FieldSampler& sampler, unsigned m) {
  return build_cross_product(sampler.homogeneous_cross_product(m));
}

/// Degree-7 field: two_monomial_field plus a random homogeneous degree-7 cross-product part.
/// The degree-7 part integrates to zero, so I and its root come from the two monomials alone.
inline TangentFieldSpec degree7_field(FieldSampler& sampler, const Rational& lambda1, const Rational& lambda2) {
  const TangentFieldSpec core = two_monomial_field(lambda1, lambda2);
  const TangentFieldSpec high = homogeneous_family_field(sampler, 7);
  return TangentFieldSpec::make(core.A() + high.A(), core.B() + high.B(), core.C() + high.C());
}

// ---------------------------------------------------------------------------
// Planted roots

/// Semisphere spec of planar degree n whose I(h)/sqrt(h) has positive roots exactly at |h| = roots
/// (at most (n-1)/2 for odd n, (n-2)/2 for even n). P = sum_m p_m x1^{2m-1} plus a degree-n monomial
/// that integrates to zero when the planted part falls short of degree n; Q = 0.
inline SemisphereSpec planted_semisphere(const InertiaParams& p, double c, unsigned n, const std::vector<Rational>& roots) {
  const unsigned terms = (n + 1) / 2;
  if (roots.size() + 1 > terms) throw InvalidSpecError("too many planted roots for this degree");
  // t(u) = prod (u - u_i): coefficients t_0..t_{r}
  std::vector<Rational> t{Rational(1)};
  for (const auto& r : roots) {
    std::vector<Rational> next(t.size() + 1, Rational(0));
    for (std::size_t k = 0; k < t.size(); ++k) {
      next[k + 1] += t[k];
      next[k] -= r * t[k];
    }
    t = std::move(next);
  }
  const Rational tb = 2 / abs(p.beta_exact());
  Poly3 P;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const unsigned i = static_cast<unsigned>(2 * k + 1);
    const Rational weight = rational_pow(tb, static_cast<unsigned>(k)) * trig_moment(0, i + 1).pi_multiple;
    P += Poly3::monomial({i, 0, 0}, t[k] / weight);
  }
  if (n % 2 == 0) P += Poly3::monomial({n, 0, 0}, 1);
  else if (2 * (t.size() - 1) + 1 < n) P += Poly3::monomial({n - 1, 1, 0}, 1);
  return SemisphereSpec{P, Poly3{}, Poly3{}, c};
}

/// Maximum number of positive roots of I/sqrt(h) for planar degree n.
inline unsigned semisphere_root_bound(unsigned n) { return n % 2 == 1 ? (n - 1) / 2 : (n >= 2 ? (n - 2) / 2 : 0); }

// ---------------------------------------------------------------------------
// Gain-field parameter search

struct GainFieldCase {
  std::array<double, 3> mu{};
  double c = 0.0;
  double gain = 0.0;
  double h_star = 0.0;
  double critical_radius = 0.0;
};

/// Smallest-radius parameter set on a grid for which the gain field's root passes every filter
/// (admissible, inside the disk, simple). Smaller spheres keep the perturbation small next to the center.
inline std::optional<GainFieldCase> search_gain_field_case() {
  const std::vector<double> grid{1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0};
  const std::vector<double> gains{1.0, 2.0};
  std::optional<GainFieldCase> best;
  for (double mu1 : grid)
    for (double mu2 : grid)
      for (double mu3 : grid) {
        if (!(mu1 > mu2 && mu2 > mu3)) continue;
        const InertiaParams p = InertiaParams::from_moments(mu1, mu2, mu3);
        if (!(p.alpha() > 0 && p.alpha() + p.beta() < 0)) continue;
        const double c_crit = gain_field_critical_radius(p);
        for (double step = 1.05; step <= 2.0; step += 0.05) {
          const double c = std::round(c_crit * step * 100.0) / 100.0;
          for (double gain : gains) {
            PerturbedSystem sys(p, gain_field(exact(gain)), 0.0);
            const Analysis a = analyze(sys, c);
            if (a.report.verifiable_count() != 1) continue;
            if (!best || c < best->c)
              best = GainFieldCase{{mu1, mu2, mu3}, c, gain, a.report.levels.front().h_star, c_crit};
          }
          if (best && best->c <= c) break;
        }
      }
  return best;
}

}  // namespace eulertop
