#pragma once

// Unperturbed Euler top: parameters, vector field, first integrals, Lie-Poisson
// structure and the chart (x1, x2, x3) -> (x, y, z = |x|^2) on {x3 > 0}.

#include <array>
#include <cmath>
#include <string>

#include "eulertop/error.hpp"
#include "eulertop/rational.hpp"

namespace eulertop {

struct State3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend bool operator==(const State3&, const State3&) = default;
};

inline State3 operator+(const State3& a, const State3& b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
inline State3 operator*(double k, const State3& a) { return {k * a.x1, k * a.x2, k * a.x3}; }
inline double dot(const State3& a, const State3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
inline std::array<double, 3> to_array(const State3& s) { return {s.x1, s.x2, s.x3}; }
inline State3 from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

/// Disk coordinates of a point of the semisphere x3 > 0; z carries the Casimir value.
struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double c = 0.0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Moments of inertia and the coefficients alpha, beta, gamma of the top
/// x1' = alpha x2 x3, x2' = beta x1 x3, x3' = gamma x1 x2.
///
/// Values are held exactly (doubles convert to dyadic rationals) so the
/// closed-form Melnikov path can run in rational arithmetic.
class InertiaParams {
 public:
  enum class Check {
    Analysis,  ///< reject alpha*beta >= 0: the x3 axis must be a center
    Dynamics,  ///< only require positive moments
  };

  static InertiaParams from_moments(double mu1, double mu2, double mu3, Check check = Check::Analysis) {
    return from_exact_moments(exact(mu1), exact(mu2), exact(mu3), check);
  }

  static InertiaParams from_exact_moments(Rational mu1, Rational mu2, Rational mu3,
                                          Check check = Check::Analysis) {
    if (mu1 <= 0 || mu2 <= 0 || mu3 <= 0) throw InvalidSpecError("moments of inertia must be positive");
    InertiaParams p;
    p.mu_ = {std::move(mu1), std::move(mu2), std::move(mu3)};
    p.alpha_ = (p.mu_[1] - p.mu_[2]) / (p.mu_[1] * p.mu_[2]);
    p.beta_ = (p.mu_[2] - p.mu_[0]) / (p.mu_[0] * p.mu_[2]);
    p.gamma_ = (p.mu_[0] - p.mu_[1]) / (p.mu_[0] * p.mu_[1]);
    p.finish(check);
    return p;
  }

  /// Parameters given as (alpha, beta) plus mu3; mu1, mu2 follow from
  /// 1/mu2 = 1/mu3 - alpha and 1/mu1 = 1/mu3 + beta.
  static InertiaParams from_rates(double alpha, double beta, double mu3, Check check = Check::Analysis) {
    const Rational a = exact(alpha);
    const Rational b = exact(beta);
    const Rational m3 = exact(mu3);
    if (m3 <= 0) throw InvalidSpecError("mu3 must be positive");
    const Rational inv2 = 1 / m3 - a;
    const Rational inv1 = 1 / m3 + b;
    if (inv1 <= 0 || inv2 <= 0)
      throw InvalidSpecError("(alpha, beta, mu3) does not correspond to positive moments of inertia");
    return from_exact_moments(1 / inv1, 1 / inv2, m3, check);
  }

  double mu1() const { return to_double(mu_[0]); }
  double mu2() const { return to_double(mu_[1]); }
  double mu3() const { return to_double(mu_[2]); }
  double alpha() const { return alpha_d_; }
  double beta() const { return beta_d_; }
  double gamma() const { return gamma_d_; }

  const Rational& mu_exact(int axis) const { return mu_.at(static_cast<std::size_t>(axis - 1)); }
  const Rational& alpha_exact() const { return alpha_; }
  const Rational& beta_exact() const { return beta_; }
  const Rational& gamma_exact() const { return gamma_; }

  /// +1 when alpha > 0 (then beta < 0), -1 otherwise. Only meaningful in analysis mode.
  int alpha_sign() const { return alpha_ > 0 ? 1 : -1; }
  bool has_center() const { return alpha_ * beta_ < 0; }

 private:
  InertiaParams() = default;

  void finish(Check check) {
    alpha_d_ = to_double(alpha_);
    beta_d_ = to_double(beta_);
    gamma_d_ = to_double(gamma_);
    if (check == Check::Analysis) {
      const Rational product = alpha_ * beta_;
      if (product == 0)
        throw DegenerateTopError("alpha*beta == 0: symmetric top, the x3 axis is not an isolated center");
      if (product > 0)
        throw InvalidSpecError("alpha*beta > 0: the x3 axis is a saddle; relabel axes so mu3 is extreme");
    }
  }

  std::array<Rational, 3> mu_;
  Rational alpha_, beta_, gamma_;
  double alpha_d_ = 0.0, beta_d_ = 0.0, gamma_d_ = 0.0;
};

inline State3 euler_field(const InertiaParams& p, const State3& s) {
  return {p.alpha() * s.x2 * s.x3, p.beta() * s.x1 * s.x3, p.gamma() * s.x1 * s.x2};
}

/// Kinetic energy 1/2 (x1^2/mu1 + x2^2/mu2 + x3^2/mu3).
inline double hamiltonian(const InertiaParams& p, const State3& s) {
  return 0.5 * (s.x1 * s.x1 / p.mu1() + s.x2 * s.x2 / p.mu2() + s.x3 * s.x3 / p.mu3());
}

inline State3 hamiltonian_gradient(const InertiaParams& p, const State3& s) {
  return {s.x1 / p.mu1(), s.x2 / p.mu2(), s.x3 / p.mu3()};
}

inline double casimir(const State3& s) { return s.x1 * s.x1 + s.x2 * s.x2 + s.x3 * s.x3; }

inline State3 casimir_gradient(const State3& s) { return {2 * s.x1, 2 * s.x2, 2 * s.x3}; }

/// so(3) Lie-Poisson structure; euler_field = J(s) * grad H(s).
inline Matrix3 structure_matrix(const State3& s) {
  return {{{0.0, -s.x3, s.x2}, {s.x3, 0.0, -s.x1}, {-s.x2, s.x1, 0.0}}};
}

inline State3 apply(const Matrix3& m, const State3& v) {
  return {m[0][0] * v.x1 + m[0][1] * v.x2 + m[0][2] * v.x3, m[1][0] * v.x1 + m[1][1] * v.x2 + m[1][2] * v.x3,
          m[2][0] * v.x1 + m[2][1] * v.x2 + m[2][2] * v.x3};
}

inline ChartPoint chart_forward(const State3& s, double c) {
  if (!(s.x3 > 0.0)) throw DomainError("chart is defined only on x3 > 0");
  return {s.x1, s.x2, casimir(s), c};
}

inline State3 chart_inverse(const ChartPoint& cp) {
  const double w2 = cp.z - (cp.x * cp.x + cp.y * cp.y);
  if (!(w2 > 0.0)) throw DomainError("chart point lies outside the open disk x^2 + y^2 < z");
  return {cp.x, cp.y, std::sqrt(w2)};
}

/// Planar Hamiltonian H(x, y) = 1/2 (alpha y^2 - beta x^2) of the top restricted to S_c^+.
inline double reduced_hamiltonian(const InertiaParams& p, double x, double y) {
  return 0.5 * (p.alpha() * y * y - p.beta() * x * x);
}

inline double reduced_hamiltonian(const InertiaParams& p, const ChartPoint& cp) {
  return reduced_hamiltonian(p, cp.x, cp.y);
}

/// Energy of the top on S_c^+ along the planar level H = h: c^2/(2 mu3) - h.
inline double energy_level(const InertiaParams& p, double c, double h) { return c * c / (2.0 * p.mu3()) - h; }

}  // namespace eulertop
