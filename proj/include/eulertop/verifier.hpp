#pragma once

// Numerical confirmation of predicted limit cycles.
//
// Cycles are hunted in the reduced planar system on S_c^+, obtained from the
// full field by the time change d(tau) = x3 dt with x3 = sqrt(c^2 - x^2 - y^2):
//
//   x' = F1(x, y, x3) / x3,   y' = F2(x, y, x3) / x3.
//
// The change preserves orbits as sets, so periods reported here are in tau.
// The section is Sigma = {y = 0, x > 0}; the unperturbed flow crosses it with
// y' = beta x, so the crossing direction is sign(beta) for either sign of alpha.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "eulertop/error.hpp"
#include "eulertop/model.hpp"
#include "eulertop/ode.hpp"
#include "eulertop/perturbation.hpp"

namespace eulertop {

/// Planar field of `sys` restricted to S_c^+ in rescaled time. Throws DomainError outside the open disk.
class ReducedField {
 public:
  ReducedField(PerturbedSystem sys, double c) : sys_(std::move(sys)), c2_(c * c) {
    if (!(c > 0.0)) throw InvalidSpecError("sphere radius c must be positive");
  }

  Vec<2> operator()(const Vec<2>& p) const {
    const double w2 = c2_ - p[0] * p[0] - p[1] * p[1];
    if (!(w2 > 0.0)) throw DomainError("orbit escapes the disk x^2 + y^2 < c^2");
    const double w = std::sqrt(w2);
    const State3 f = sys_({p[0], p[1], w});
    return {f.x1 / w, f.x2 / w};
  }

 private:
  PerturbedSystem sys_;
  double c2_;
};

/// Full 3D field as an integrator right-hand side.
inline auto full_field(const PerturbedSystem& sys) {
  return [sys](const Vec<3>& y) { return to_array(sys(from_array(y))); };
}

struct Crossing {
  double t = 0.0;
  std::vector<double> y;
};

/// First crossing after t0 of the hyperplane y[plane] = 0 in direction `direction` (+1 or -1)
/// with y[positive] > 0, located on the dense output.
template <std::size_t N, class F>
Crossing next_crossing(F f, const Vec<N>& y0, std::size_t plane, std::size_t positive, int direction, double t_max,
                       const IntegratorConfig& cfg) {
  std::optional<Crossing> hit;
  const double before = -direction;
  integrate_visit<N>(std::move(f), y0, 0.0, t_max, cfg, [&](const DenseStep<N>& d) {
    const double g0 = d(d.t0)[plane];
    const Vec<N> end = d(d.t1());
    const double g1 = end[plane];
    const bool approaches = g0 * before > 0.0;
    const bool arrives = g1 * before <= 0.0;
    if (!(approaches && arrives)) return true;
    double t_hit = d.t1();
    if (g1 != 0.0) {
      auto g = [&](double t) { return d(t)[plane]; };
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          g, d.t0, d.t1(), g0, g1, boost::math::tools::eps_tolerance<double>(52), iters);
      t_hit = 0.5 * (bracket.first + bracket.second);
    }
    Vec<N> y = d(t_hit);
    if (y[positive] <= 0.0) return true;
    y[plane] = 0.0;
    hit = Crossing{t_hit, std::vector<double>(y.begin(), y.end())};
    return false;
  });
  if (!hit) throw NumericalError("no return to the section within the maximum time");
  return *hit;
}

struct ReturnResult {
  double x_next = 0.0;
  double transit_time = 0.0;  ///< rescaled time tau
};

/// Period of the unperturbed center in rescaled time.
inline double linear_period(const InertiaParams& p) { return 2.0 * std::numbers::pi / std::sqrt(-p.alpha() * p.beta()); }

/// Poincare map of Sigma = {y = 0, x > 0} for the reduced planar system.
inline ReturnResult return_map(const PerturbedSystem& sys, double c, double x0, const IntegratorConfig& cfg = {}) {
  const InertiaParams& p = sys.params();
  if (!p.has_center()) throw InvalidSpecError("return map requires alpha*beta < 0");
  if (!(x0 > 0.0 && x0 < c)) throw DomainError("section point must satisfy 0 < x0 < c");
  IntegratorConfig step_cfg = cfg;
  const double period = linear_period(p);
  step_cfg.max_step = std::min(cfg.max_step, period / 16.0);
  const int direction = p.beta() > 0 ? 1 : -1;
  const auto hit = next_crossing<2>(ReducedField(sys, c), Vec<2>{x0, 0.0}, 1, 0, direction, 20.0 * period, step_cfg);
  return {hit.y[0], hit.t};
}

/// Displacement d(x) = P(x) - x of the return map.
inline double displacement(const PerturbedSystem& sys, double c, double x, const IntegratorConfig& cfg = {}) {
  return return_map(sys, c, x, cfg).x_next - x;
}

enum class Stability { Attracting, Repelling, Unresolved };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::Unresolved: return "found, hyperbolicity unresolved";
  }
  return "?";
}

struct CycleResult {
  double x_star = 0.0;
  double period = 0.0;  ///< rescaled time tau
  double h_num = 0.0;   ///< H(x*, 0)
  double rho = 0.0;     ///< derivative of the return map at x*
  double rho_noise = 0.0;
  Stability stability = Stability::Unresolved;
  int iterations = 0;
};

struct FindCycleConfig {
  int max_iterations = 50;
  double fd_step = 1e-6;          ///< times c
  double x_tolerance = 1e-12;     ///< times c
  double continuum_floor = 1e-9;  ///< |d| below this (times c) at two probes means no isolated fixed point
  double hyperbolicity_factor = 10.0;
};

/// Section coordinate of the unperturbed level H = h: x = sqrt(2|h| / |beta|).
inline double section_point(const InertiaParams& p, double h) {
  if (!(p.alpha() * h > 0.0)) throw DomainError("alpha*h <= 0: no periodic orbit at this level");
  return std::sqrt(2.0 * std::abs(h) / std::abs(p.beta()));
}

/// Secant iteration on the displacement from the section point of level h_guess.
inline CycleResult find_cycle(const PerturbedSystem& sys, double c, double h_guess, const IntegratorConfig& cfg = {},
                              const FindCycleConfig& fc = {}) {
  const InertiaParams& p = sys.params();
  double x0 = section_point(p, h_guess);
  if (!(x0 < c)) throw DomainError("level h_guess lies outside the disk");
  double x1 = x0 + std::min(1e-2 * x0, 0.5 * (c - x0));
  double d0 = displacement(sys, c, x0, cfg);
  double d1 = displacement(sys, c, x1, cfg);
  const double floor = fc.continuum_floor * c;
  if (std::abs(d0) <= floor && std::abs(d1) <= floor)
    throw NumericalError("continuum of fixed points: the return map is the identity to tolerance");

  CycleResult out;
  bool converged = false;
  for (int iter = 1; iter <= fc.max_iterations; ++iter) {
    if (d1 == d0) throw NumericalError("secant iteration stalled on a flat displacement");
    const double x2 = x1 - d1 * (x1 - x0) / (d1 - d0);
    if (!(x2 > 0.0 && x2 < c)) throw NumericalError("secant iterate left the section (0, c)");
    x0 = x1;
    d0 = d1;
    x1 = x2;
    d1 = displacement(sys, c, x1, cfg);
    out.iterations = iter;
    if (std::abs(x1 - x0) <= fc.x_tolerance * c) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("find_cycle did not converge in the iteration limit");
  if (std::abs(x1) < 1e-8 * c) throw NumericalError("converged to the center point, not a cycle");

  out.x_star = x1;
  out.h_num = reduced_hamiltonian(p, x1, 0.0);
  out.period = return_map(sys, c, x1, cfg).transit_time;

  const double delta = fc.fd_step * c;
  auto slope = [&](double step) {
    return (return_map(sys, c, x1 + step, cfg).x_next - return_map(sys, c, x1 - step, cfg).x_next) / (2.0 * step);
  };
  out.rho = slope(delta);
  // Truncation error of the central difference is O(delta^2) and far below rounding here,
  // so the spread between two step sizes measures the integration noise.
  out.rho_noise = std::abs(out.rho - slope(2.0 * delta));
  const double gap = std::abs(out.rho - 1.0);
  if (gap >= fc.hyperbolicity_factor * out.rho_noise && gap > 0.0)
    out.stability = out.rho < 1.0 ? Stability::Attracting : Stability::Repelling;
  return out;
}

/// max |D(x(t)) - D(s0)| along the full 3D flow, sampled at accepted steps and dense midpoints.
inline double casimir_drift(const PerturbedSystem& sys, const State3& s0, double t_end,
                            const IntegratorConfig& cfg = {}) {
  const double d0 = casimir(s0);
  double worst = 0.0;
  integrate_visit<3>(full_field(sys), to_array(s0), 0.0, t_end, cfg, [&](const DenseStep<3>& d) {
    for (int k = 1; k <= 4; ++k) worst = std::max(worst, std::abs(casimir(from_array(d(d.t0 + d.h * k / 4))) - d0));
    return true;
  });
  return worst;
}

/// Maximum drift of energy and Casimir along the full 3D flow.
struct ConservationDrift {
  double energy = 0.0;
  double casimir = 0.0;
};

inline ConservationDrift conservation_drift(const PerturbedSystem& sys, const State3& s0, double t_end,
                                            const IntegratorConfig& cfg = {}) {
  const double h0 = hamiltonian(sys.params(), s0);
  const double d0 = casimir(s0);
  ConservationDrift out;
  integrate_visit<3>(full_field(sys), to_array(s0), 0.0, t_end, cfg, [&](const DenseStep<3>& d) {
    for (int k = 1; k <= 4; ++k) {
      const State3 s = from_array(d(d.t0 + d.h * k / 4));
      out.energy = std::max(out.energy, std::abs(hamiltonian(sys.params(), s) - h0));
      out.casimir = std::max(out.casimir, std::abs(casimir(s) - d0));
    }
    return true;
  });
  return out;
}

/// Lift of a planar cycle: start at chart_inverse(x*, 0) and follow the 3D field to the next crossing
/// of {x2 = 0, x1 > 0}. Returns the distance to the start point.
struct Lift3D {
  double distance = 0.0;
  double period = 0.0;  ///< physical time t
};

inline Lift3D lift_cycle(const PerturbedSystem& sys, double c, const CycleResult& cycle,
                         const IntegratorConfig& cfg = {}) {
  const State3 s0 = chart_inverse({cycle.x_star, 0.0, c * c, c});
  const double w_min = std::sqrt(std::max(c * c - cycle.x_star * cycle.x_star, 0.0));
  IntegratorConfig step_cfg = cfg;
  const double t_scale = linear_period(sys.params()) / std::max(w_min, 1e-300);
  step_cfg.max_step = std::min(cfg.max_step, t_scale / 16.0);
  const int direction = sys.params().beta() > 0 ? 1 : -1;
  const auto hit = next_crossing<3>(full_field(sys), to_array(s0), 1, 0, direction, 20.0 * t_scale, step_cfg);
  const State3 end{hit.y[0], hit.y[1], hit.y[2]};
  const State3 diff = end + (-1.0) * s0;
  return {std::sqrt(dot(diff, diff)), hit.t};
}

/// One row of an epsilon study at a predicted level.
struct VerificationRow {
  double h_star = 0.0;
  double epsilon = 0.0;
  bool converged = false;
  std::optional<CycleResult> cycle;
  double casimir_drift = std::numeric_limits<double>::quiet_NaN();
  std::string status;
};

struct VerifyConfig {
  IntegratorConfig integrator;
  FindCycleConfig cycle;
  double drift_time = 100.0;
  bool measure_drift = true;
};

/// Runs find_cycle for each epsilon; failures are recorded in the row and the study continues.
inline std::vector<VerificationRow> verify_level(const PerturbedSystem& sys, double c, double h_star,
                                                 const std::vector<double>& epsilons, const VerifyConfig& vc = {}) {
  std::vector<VerificationRow> rows;
  for (double eps : epsilons) {
    VerificationRow row;
    row.h_star = h_star;
    row.epsilon = eps;
    const PerturbedSystem scaled = sys.with_epsilon(eps);
    try {
      row.cycle = find_cycle(scaled, c, h_star, vc.integrator, vc.cycle);
      row.converged = true;
      row.status = to_string(row.cycle->stability);
      if (vc.measure_drift && scaled.kind() != SpecKind::Generic) {
        const State3 s0 = chart_inverse({row.cycle->x_star, 0.0, c * c, c});
        row.casimir_drift = casimir_drift(scaled, s0, vc.drift_time, vc.integrator);
      }
    } catch (const Error& e) {
      row.status = std::string("failed: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace eulertop
