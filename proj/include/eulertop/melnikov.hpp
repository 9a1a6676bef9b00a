#pragma once

// First-order Poincare-Pontryagin function of a perturbed Euler top on S_c^+.
//
// In the disk chart the unperturbed flow is the linear center of
// H(x, y) = 1/2 (alpha y^2 - beta x^2); for alpha*h > 0 its level set is the ellipse
//
//   x = sqrt(-2h/beta) cos(theta),  y = sqrt(2h/alpha) sin(theta),  theta in [0, 2 pi),
//
// and I(h) is the integral of P dy - Q dx around it, where (P, Q) is the
// perturbation of the rescaled planar system. For a polynomial one-form the
// integral reduces term by term to trigonometric moments:
//
//   I(h) = (2 pi / sqrt|alpha beta|) * sum_m r_m u^m,   u = |h|,
//
// with r_m rational in |alpha|, |beta|, c^2 and the field coefficients. Both
// closed-form families feed this one routine; they differ only in how (P, Q)
// is read off the spec. Orientation is counterclockwise in theta for either
// sign of alpha, so the overall sign of I is a convention while its zero set
// is not.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eulertop/error.hpp"
#include "eulertop/model.hpp"
#include "eulertop/moments.hpp"
#include "eulertop/perturbation.hpp"
#include "eulertop/polynomial.hpp"
#include "eulertop/quadrature.hpp"
#include "eulertop/roots.hpp"

namespace eulertop {

enum class MelnikovFamily { Semisphere, AllSpheres };

inline const char* to_string(MelnikovFamily f) {
  return f == MelnikovFamily::Semisphere ? "semisphere" : "all-spheres";
}

struct MelnikovPoly {
  MelnikovFamily family = MelnikovFamily::Semisphere;
  InertiaParams params;
  double c = 0.0;
  /// I(h) = prefactor * sum_m exact_coeffs[m] |h|^m.
  std::vector<Rational> exact_coeffs;
  double prefactor = 0.0;
  /// Power of s = sqrt|h| factored out of I: 1 for semisphere (I = sqrt(h) M_n), 2 for all-spheres (I = h M_{n-1}).
  unsigned factor_power = 1;
  /// I(h) / s^factor_power as a polynomial in s.
  SqrtPoly body;
  /// Maximum degree of (P, Q): in (x1, x2) for semisphere, total for all-spheres.
  int degree_n = 0;

  bool identically_zero() const {
    return std::all_of(exact_coeffs.begin(), exact_coeffs.end(), [](const Rational& r) { return r == 0; });
  }

  /// Coefficients of I as a polynomial in u = |h|.
  std::vector<double> u_coefficients() const {
    std::vector<double> out;
    for (const auto& r : exact_coeffs) out.push_back(prefactor * to_double(r));
    return out;
  }

  double operator()(double h) const {
    if (params.alpha() * h < 0.0) throw DomainError("alpha*h < 0: no periodic orbit at this level");
    const auto u = u_coefficients();
    return poly1d::evaluate<double>(u, std::abs(h));
  }
};

/// Rational coefficients r_m of the ellipse integral of Pt dy - Qt dx, Pt and Qt in (x1, x2) only.
inline std::vector<Rational> ellipse_line_integral(const Poly3& Pt, const Poly3& Qt, const InertiaParams& p) {
  if (Pt.degree_in(3) != 0 || Qt.degree_in(3) != 0)
    throw StructuralError("line-integral integrand must depend on (x, y) only");
  const Rational ta = 2 / abs(p.alpha_exact());
  const Rational tb = 2 / abs(p.beta_exact());
  std::vector<Rational> r;
  auto add = [&](unsigned m, const Rational& v) {
    if (r.size() <= m) r.resize(m + 1, Rational(0));
    r[m] += v;
  };
  for (const auto& [mono, coeff] : Pt.terms()) {
    if (mono.i % 2 == 0 || mono.j % 2 == 1) continue;
    const unsigned m = (mono.i + mono.j + 1) / 2;
    add(m, coeff * rational_pow(ta, mono.j / 2) * rational_pow(tb, (mono.i - 1) / 2) *
               trig_moment(mono.j, mono.i + 1).pi_multiple);
  }
  for (const auto& [mono, coeff] : Qt.terms()) {
    if (mono.i % 2 == 1 || mono.j % 2 == 0) continue;
    const unsigned m = (mono.i + mono.j + 1) / 2;
    add(m, coeff * rational_pow(tb, mono.i / 2) * rational_pow(ta, (mono.j - 1) / 2) *
               trig_moment(mono.j + 1, mono.i).pi_multiple);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

namespace detail {

inline void require_center(const InertiaParams& p) {
  if (!p.has_center()) throw InvalidSpecError("Melnikov analysis requires alpha*beta < 0");
}

inline unsigned planar_degree(const Poly3& p) {
  unsigned d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, m.i + m.j);
  return d;
}

inline MelnikovPoly assemble(MelnikovFamily family, const InertiaParams& p, double c, std::vector<Rational> r,
                             unsigned factor_power, int degree_n) {
  MelnikovPoly out{family, p, c, std::move(r), 0.0, factor_power, SqrtPoly{}, degree_n};
  out.prefactor = 2.0 * std::numbers::pi / std::sqrt(std::abs(p.alpha() * p.beta()));
  std::vector<double> body;
  for (std::size_t m = 0; m < out.exact_coeffs.size(); ++m) {
    if (out.exact_coeffs[m] == 0) continue;
    const std::size_t power = 2 * m - factor_power;
    if (body.size() <= power) body.resize(power + 1, 0.0);
    body[power] = out.prefactor * to_double(out.exact_coeffs[m]);
  }
  out.body = SqrtPoly(std::move(body));
  return out;
}

}  // namespace detail

/// Semisphere family: I(h) = sqrt(h) M_n(h) with M_n odd in sqrt(h). P and Q are in (x1, x2, z).
inline MelnikovPoly melnikov_semisphere(const Poly3& P, const Poly3& Q, const InertiaParams& params, double c) {
  detail::require_center(params);
  if (!(c > 0.0)) throw InvalidSpecError("sphere radius c must be positive");
  const Rational c2 = exact(c) * exact(c);
  auto r = ellipse_line_integral(P.substitute(3, c2), Q.substitute(3, c2), params);
  const int n = static_cast<int>(std::max(detail::planar_degree(P), detail::planar_degree(Q)));
  return detail::assemble(MelnikovFamily::Semisphere, params, c, std::move(r), 1, n);
}

/// (P, Q) with A = x3 P(x1, x2, x3^2), B = x3 Q(x1, x2, x3^2); third variable of P, Q stands for x3^2.
struct X3Form {
  Poly3 P, Q;
};

inline std::optional<X3Form> x3_form(const Poly3& A, const Poly3& B) {
  auto reduce = [](const Poly3& F) -> std::optional<Poly3> {
    Poly3 out;
    for (const auto& [m, c] : F.terms()) {
      if (m.k % 2 == 0) return std::nullopt;
      out += Poly3::monomial({m.i, m.j, (m.k - 1) / 2}, c);
    }
    return out;
  };
  auto P = reduce(A);
  auto Q = reduce(B);
  if (!P || !Q) return std::nullopt;
  return X3Form{std::move(*P), std::move(*Q)};
}

/// All-spheres family with A = x3 P(x1, x2, x3^2), B = x3 Q(x1, x2, x3^2): I(h) = h M_{n-1}(h).
inline MelnikovPoly melnikov_allspheres(const Poly3& A, const Poly3& B, const InertiaParams& params, double c) {
  detail::require_center(params);
  if (!(c > 0.0)) throw InvalidSpecError("sphere radius c must be positive");
  const auto form = x3_form(A, B);
  if (!form)
    throw StructuralError(
        "A, B are not of the form x3*P(x1,x2,x3^2), x3*Q(x1,x2,x3^2); use the quadrature path");
  const Poly3 height2 = Poly3::constant(exact(c) * exact(c)) - Poly3::variable(1).pow(2) - Poly3::variable(2).pow(2);
  auto r = ellipse_line_integral(form->P.substitute(3, height2), form->Q.substitute(3, height2), params);
  const int n = std::max(form->P.degree(), form->Q.degree());
  return detail::assemble(MelnikovFamily::AllSpheres, params, c, std::move(r), 2, n);
}

/// Semiaxes (along x, along y) of the level ellipse H = h.
struct Semiaxes {
  double x = 0.0;
  double y = 0.0;
};

inline Semiaxes ellipse_semiaxes(const InertiaParams& p, double h) {
  return {std::sqrt(std::max(0.0, -2.0 * h / p.beta())), std::sqrt(std::max(0.0, 2.0 * h / p.alpha()))};
}

/// Largest |h| whose ellipse fits strictly inside the disk of radius c.
inline double disk_level_limit(const InertiaParams& p, double c) {
  return 0.5 * c * c * std::min(std::abs(p.alpha()), std::abs(p.beta()));
}

/// Integral of (A dy - B dx)/x3 around H = h on S_c^+ by adaptive quadrature; the independent oracle.
inline QuadratureResult melnikov_quadrature_detail(const FieldEvaluator& field, const InertiaParams& p, double c,
                                                    double h, const QuadratureConfig& cfg = {}) {
  if (!(p.alpha() * h > 0.0)) throw DomainError("alpha*h <= 0: no periodic orbit at this level");
  const Semiaxes ax = ellipse_semiaxes(p, h);
  if (!(std::max(ax.x, ax.y) < c)) throw DomainError("level ellipse touches or leaves the disk of radius c");
  auto integrand = [&](double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double x = ax.x * ct;
    const double y = ax.y * st;
    const double w = std::sqrt(c * c - x * x - y * y);
    const State3 f = field({x, y, w});
    return (f.x1 * ax.y * ct + f.x2 * ax.x * st) / w;
  };
  return integrate_adaptive(integrand, 0.0, 2.0 * std::numbers::pi, cfg);
}

inline double melnikov_quadrature(const FieldEvaluator& field, const InertiaParams& p, double c, double h,
                                  const QuadratureConfig& cfg = {}) {
  return melnikov_quadrature_detail(field, p, c, h, cfg).value;
}

// ---------------------------------------------------------------------------
// Admissibility

/// Level bound for an admissible root: h* < bound (alpha > 0) or h* > bound (alpha < 0), with
/// bound = c^2/2 (1/mu3 - max{-alpha, beta}) resp. c^2/2 (1/mu3 - min{-alpha, beta}).
inline double level_bound(const InertiaParams& p, double c) {
  const double extreme = p.alpha() > 0 ? std::max(-p.alpha(), p.beta()) : std::min(-p.alpha(), p.beta());
  return 0.5 * c * c * (1.0 / p.mu3() - extreme);
}

struct LevelPrediction {
  double h_star = 0.0;
  double h_bar = 0.0;  ///< energy of the top on the predicted orbit, c^2/(2 mu3) - h*
  bool sign_ok = false;
  bool bound_ok = false;
  bool admissible = false;   ///< sign_ok && bound_ok
  bool inside_disk = false;  ///< the level ellipse lies strictly inside the disk of radius c
  bool simple = false;
  bool borderline = false;
  double derivative = 0.0;
  Semiaxes semiaxes;
  std::string reason;

  bool verifiable() const { return admissible && inside_disk && simple; }
};

inline LevelPrediction classify_level(const InertiaParams& p, double c, double h_star, bool simple = true,
                                      bool borderline = false) {
  LevelPrediction lp;
  lp.h_star = h_star;
  lp.h_bar = energy_level(p, c, h_star);
  lp.sign_ok = p.alpha() * h_star > 0.0;
  const double bound = level_bound(p, c);
  lp.bound_ok = p.alpha() > 0 ? h_star < bound : h_star > bound;
  lp.admissible = lp.sign_ok && lp.bound_ok;
  lp.simple = simple;
  lp.borderline = borderline;
  if (lp.sign_ok) {
    lp.semiaxes = ellipse_semiaxes(p, h_star);
    lp.inside_disk = std::max(lp.semiaxes.x, lp.semiaxes.y) < c;
  }
  std::vector<std::string> issues;
  if (!lp.sign_ok) issues.emplace_back("alpha*h <= 0");
  if (!lp.bound_ok) {
    std::ostringstream os;
    os << "level bound violated (" << (p.alpha() > 0 ? "h* < " : "h* > ") << bound << ")";
    issues.push_back(os.str());
  }
  if (lp.sign_ok && !lp.inside_disk) issues.emplace_back("ellipse leaves disk");
  if (!simple) issues.emplace_back("not simple");
  if (borderline) issues.emplace_back("simplicity borderline");
  if (issues.empty()) {
    lp.reason = "ok";
  } else {
    for (std::size_t k = 0; k < issues.size(); ++k) lp.reason += (k ? "; " : "") + issues[k];
  }
  return lp;
}

enum class Verdict { Roots, NoRoots, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Roots: return "roots";
    case Verdict::NoRoots: return "no roots";
    case Verdict::Inconclusive: return "inconclusive (I == 0)";
  }
  return "?";
}

struct BifurcationReport {
  std::string method;  ///< "closed-form" or "quadrature"
  std::string family;
  double c = 0.0;
  Verdict verdict = Verdict::NoRoots;
  std::vector<LevelPrediction> levels;

  int admissible_count() const {
    return static_cast<int>(std::count_if(levels.begin(), levels.end(), [](const auto& l) { return l.admissible; }));
  }
  int verifiable_count() const {
    return static_cast<int>(std::count_if(levels.begin(), levels.end(), [](const auto& l) { return l.verifiable(); }));
  }
};

/// Roots of I with their admissibility; nonpositive alpha*h roots are listed and rejected.
inline BifurcationReport admissible_levels(const MelnikovPoly& m) {
  BifurcationReport report;
  report.method = "closed-form";
  report.family = to_string(m.family);
  report.c = m.c;
  if (m.identically_zero()) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  const double sign = m.params.alpha_sign();
  const RootReport positive = positive_roots(m.body);
  for (const auto& r : positive.roots)
    report.levels.push_back(classify_level(m.params, m.c, sign * r.h, r.simple, r.borderline));

  // Real roots with u = |h| < 0 correspond to alpha*h < 0: reported, never admissible.
  std::vector<double> q = m.u_coefficients();
  while (!q.empty() && q.front() == 0.0) q.erase(q.begin());
  const double bound = poly1d::cauchy_bound(q);
  const auto dq = poly1d::derivative(q);
  double scale = 0.0;
  for (double v : q) scale = std::max(scale, std::abs(v));
  for (double u : poly1d::real_roots(q, -bound, 0.0)) {
    const double d = std::abs(poly1d::evaluate<double>(dq, u));
    report.levels.push_back(classify_level(m.params, m.c, sign * u, d > kSimplicityTolerance * scale));
  }
  report.verdict = report.levels.empty() ? Verdict::NoRoots : Verdict::Roots;
  return report;
}

// ---------------------------------------------------------------------------
// Quadrature fallback for tangent fields outside the x3 P(x1, x2, x3^2) form.

struct QuadratureScanConfig {
  int samples = 96;
  double inner_fraction = 1e-3;  ///< scan |h| in [inner, outer] * disk_level_limit
  double outer_fraction = 0.995;
  QuadratureConfig quadrature{1e-13, 1e-12, 4000};
};

inline BifurcationReport melnikov_scan(const FieldEvaluator& field, const InertiaParams& p, double c,
                                       const QuadratureScanConfig& cfg = {}) {
  detail::require_center(p);
  BifurcationReport report;
  report.method = "quadrature";
  report.family = "tangent";
  report.c = c;
  const double sign = p.alpha_sign();
  const double limit = disk_level_limit(p, c);
  auto I = [&](double u) { return melnikov_quadrature_detail(field, p, c, sign * u, cfg.quadrature); };

  std::vector<double> us, values;
  double scale = 0.0;
  const double lo = cfg.inner_fraction * limit;
  const double hi = cfg.outer_fraction * limit;
  for (int k = 0; k < cfg.samples; ++k) {
    const double u = lo + (hi - lo) * k / (cfg.samples - 1);
    const auto r = I(u);
    us.push_back(u);
    values.push_back(r.value);
    scale = std::max(scale, r.abs_value);
  }
  const double zero_tol = 1e-11 * std::max(scale, 1e-300);
  if (std::all_of(values.begin(), values.end(), [&](double v) { return std::abs(v) <= zero_tol; })) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  for (std::size_t k = 0; k + 1 < us.size(); ++k) {
    if (values[k] == 0.0 || (values[k] > 0) == (values[k + 1] > 0)) continue;
    double a = us[k], b = us[k + 1], fa = values[k];
    for (int iter = 0; iter < 60 && b - a > 1e-14 * b; ++iter) {
      const double mid = 0.5 * (a + b);
      const double fm = I(mid).value;
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    const double root = 0.5 * (a + b);
    const double step = 1e-5 * root;
    const double slope = (I(root + step).value - I(root - step).value) / (2 * step);
    const bool simple = std::abs(slope) * root > kSimplicityTolerance * peak;
    report.levels.push_back(classify_level(p, c, sign * root, simple));
  }
  report.verdict = report.levels.empty() ? Verdict::NoRoots : Verdict::Roots;
  return report;
}

// ---------------------------------------------------------------------------

struct Analysis {
  std::optional<MelnikovPoly> closed_form;
  BifurcationReport report;
};

/// Closed form when the spec admits one, quadrature scan otherwise. `c` is the sphere radius for
/// the all-spheres kinds; semisphere specs carry their own radius.
inline Analysis analyze(const PerturbedSystem& sys, std::optional<double> c = std::nullopt) {
  const InertiaParams& p = sys.params();
  detail::require_center(p);
  if (const auto* semi = std::get_if<SemisphereSpec>(&sys.spec())) {
    if (c && *c != semi->c) throw InvalidSpecError("semisphere specs fix their own radius c");
    auto m = melnikov_semisphere(semi->P, semi->Q, p, semi->c);
    auto report = admissible_levels(m);
    return {std::move(m), std::move(report)};
  }
  if (sys.kind() == SpecKind::Generic) throw InvalidSpecError("generic fields preserve no sphere");
  if (!c) throw InvalidSpecError("a sphere radius c is required for tangent fields");
  const auto polys = *field_polynomials(sys.spec());
  if (x3_form(polys[0], polys[1])) {
    auto m = melnikov_allspheres(polys[0], polys[1], p, *c);
    auto report = admissible_levels(m);
    return {std::move(m), std::move(report)};
  }
  return {std::nullopt, melnikov_scan(sys.perturbation(), p, *c)};
}

}  // namespace eulertop
