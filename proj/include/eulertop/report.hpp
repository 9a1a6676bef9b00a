#pragma once

// CSV and text renderings of analysis and verification results.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eulertop/melnikov.hpp"
#include "eulertop/model.hpp"
#include "eulertop/ode.hpp"
#include "eulertop/verifier.hpp"

namespace eulertop {

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string num(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

inline void write_levels_csv(std::ostream& os, const BifurcationReport& report) {
  os << "h_star,h_bar,admissible,inside_disk,simple,reason\n";
  for (const auto& l : report.levels)
    os << detail::num(l.h_star) << ',' << detail::num(l.h_bar) << ',' << l.admissible << ',' << l.inside_disk << ','
       << l.simple << ',' << detail::csv_field(l.reason) << '\n';
}

inline void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows) {
  os << "h_star,h_num,rho,epsilon,converged,casimir_drift,status\n";
  for (const auto& r : rows) {
    os << detail::num(r.h_star) << ',' << (r.cycle ? detail::num(r.cycle->h_num) : "") << ','
       << (r.cycle ? detail::num(r.cycle->rho) : "") << ',' << detail::num(r.epsilon) << ',' << r.converged << ','
       << detail::num(r.casimir_drift) << ',' << detail::csv_field(r.status) << '\n';
  }
}

/// Rows t, x1, x2, x3, H, D.
inline void write_trajectory_csv(std::ostream& os, const InertiaParams& p, const Trajectory<3>& tr) {
  os << "t,x1,x2,x3,H,D\n";
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    const State3 s = from_array(tr.y[k]);
    os << detail::num(tr.t[k]) << ',' << detail::num(s.x1) << ',' << detail::num(s.x2) << ',' << detail::num(s.x3)
       << ',' << detail::num(hamiltonian(p, s)) << ',' << detail::num(casimir(s)) << '\n';
  }
}

/// "2*pi/sqrt(|alpha*beta|) * (r1*h + r2*h^2 + ...)" with exact r_m; h stands for |h| when alpha < 0.
inline std::string format_closed_form(const MelnikovPoly& m) {
  if (m.identically_zero()) return "I(h) == 0";
  std::ostringstream os;
  const std::string var = m.params.alpha() > 0 ? "h" : "|h|";
  os << "I(h) = 2*pi/sqrt(|alpha*beta|) * (";
  bool first = true;
  for (std::size_t k = 0; k < m.exact_coeffs.size(); ++k) {
    const Rational& r = m.exact_coeffs[k];
    if (r == 0) continue;
    std::string s = format_rational(r);
    if (!first) os << (r < 0 ? " - " : " + ");
    if (!first && r < 0) s = format_rational(-r);
    const bool unit = k > 0 && (s == "1" || s == "-1");
    if (unit) os << (s == "-1" ? "-" : "");
    else os << s << (k > 0 ? "*" : "");
    first = false;
    if (k == 1) os << var;
    if (k > 1) os << var << '^' << k;
  }
  os << ')';
  return os.str();
}

inline void write_report_text(std::ostream& os, const BifurcationReport& report) {
  os << "method: " << report.method << " (" << report.family << "), c = " << report.c << '\n';
  os << "verdict: " << to_string(report.verdict) << '\n';
  for (const auto& l : report.levels) {
    os << "  h* = " << std::setprecision(12) << l.h_star << "  h_bar = " << l.h_bar
       << "  semiaxes = (" << l.semiaxes.x << ", " << l.semiaxes.y << ")  "
       << (l.verifiable() ? "verifiable" : "rejected") << ": " << l.reason << '\n';
  }
}

inline void write_verification_text(std::ostream& os, const std::vector<VerificationRow>& rows) {
  for (const auto& r : rows) {
    os << "  eps = " << std::setprecision(6) << r.epsilon << "  h* = " << std::setprecision(12) << r.h_star;
    if (r.cycle)
      os << "  h_num = " << r.cycle->h_num << "  |h_num - h*| = " << std::abs(r.cycle->h_num - r.h_star)
         << "  rho = " << r.cycle->rho;
    if (!std::isnan(r.casimir_drift)) os << "  drift = " << std::setprecision(3) << r.casimir_drift;
    os << "  [" << r.status << "]\n";
  }
}

}  // namespace eulertop
