#pragma once

// Command implementations behind the eulertop tool. Each command writes to
// the given streams and returns a process exit code.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eulertop/eulertop.hpp"

namespace eulertop::cli {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kInconclusive = 2,
  kInvalidSpec = 3,
  kNumericalFailure = 4,
};

enum class Format { Text, Csv };

struct RunConfig {
  std::string spec_path;
  std::optional<std::string> out_dir;
  std::optional<double> c;
  std::optional<double> mu3;
  std::vector<double> epsilons;
  IntegratorConfig integrator;
  Format format = Format::Text;
  unsigned max_degree = 8;
};

inline std::optional<std::string> default_out_dir() {
  if (const char* env = std::getenv("EULERTOP_OUT_DIR"); env && *env) return std::string(env);
  return std::nullopt;
}

inline std::vector<double> parse_epsilon_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidSpecError("bad epsilon value '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v) || v == 0.0) throw InvalidSpecError("bad epsilon value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidSpecError("epsilon list is empty");
  return out;
}

/// Applies --c and --mu3 overrides; --c is rejected for semisphere specs, whose radius is intrinsic.
inline SpecFile apply_overrides(SpecFile spec, const RunConfig& cfg) {
  if (cfg.c) {
    if (spec.kind() == SpecKind::Semisphere) throw InvalidSpecError("--c cannot override a semisphere spec");
    if (!(*cfg.c > 0.0)) throw InvalidSpecError("--c must be positive");
    spec.c = cfg.c;
  }
  if (cfg.mu3) {
    if (!(*cfg.mu3 > 0.0)) throw InvalidSpecError("--mu3 must be positive");
    if (auto* m = std::get_if<MomentsForm>(&spec.params_form)) m->mu[2] = *cfg.mu3;
    else std::get<RatesForm>(spec.params_form).mu3 = *cfg.mu3;
  }
  return spec;
}

inline double sphere_radius(const SpecFile& spec) {
  if (const auto* s = std::get_if<SemisphereSpec>(&spec.perturbation)) return s->c;
  if (!spec.c) throw InvalidSpecError("spec needs a sphere radius c (field or --c)");
  return *spec.c;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IdenticallyZeroError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const InvalidSpecError& e) {
    err << "invalid spec: " << e.what() << '\n';
    return kInvalidSpec;
  } catch (const StructuralError& e) {
    err << "invalid spec: " << e.what() << '\n';
    return kInvalidSpec;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace detail

/// Closed form (or quadrature fallback), roots and admissibility.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const SpecFile spec = apply_overrides(load_spec(cfg.spec_path), cfg);
    const double c = sphere_radius(spec);
    PerturbedSystem sys(spec.params(), spec.perturbation, spec.epsilon.value_or(0.0));
    const Analysis analysis = analyze(sys, spec.kind() == SpecKind::Semisphere ? std::nullopt : std::optional(c));

    std::ostringstream csv;
    write_levels_csv(csv, analysis.report);
    if (cfg.format == Format::Csv) {
      out << csv.str();
    } else {
      if (!spec.name.empty()) out << "spec: " << spec.name << '\n';
      out << "alpha = " << sys.params().alpha() << ", beta = " << sys.params().beta() << ", mu3 = " << sys.params().mu3()
          << '\n';
      if (analysis.closed_form) out << format_closed_form(*analysis.closed_form) << '\n';
      write_report_text(out, analysis.report);
    }
    if (cfg.out_dir) detail::write_file(std::filesystem::path(*cfg.out_dir) / "levels.csv", csv.str());
    if (analysis.report.verdict == Verdict::Inconclusive) {
      err << "I == 0: first-order analysis is inconclusive\n";
      return static_cast<int>(kInconclusive);
    }
    return static_cast<int>(kOk);
  });
}

/// Rows for every root: verified levels run the epsilon study, the rest are marked skipped.
inline std::vector<VerificationRow> verification_rows(const PerturbedSystem& sys, double c,
                                                      const BifurcationReport& report, const std::vector<double>& eps,
                                                      const VerifyConfig& vc) {
  std::vector<VerificationRow> rows;
  for (const auto& level : report.levels) {
    if (!level.verifiable()) {
      VerificationRow row;
      row.h_star = level.h_star;
      row.epsilon = std::numeric_limits<double>::quiet_NaN();
      row.status = level.admissible ? "skipped: " + level.reason : "skipped: admissibility";
      rows.push_back(row);
      continue;
    }
    auto study = verify_level(sys, c, level.h_star, eps, vc);
    rows.insert(rows.end(), study.begin(), study.end());
  }
  return rows;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const SpecFile spec = apply_overrides(load_spec(cfg.spec_path), cfg);
    const double c = sphere_radius(spec);
    std::vector<double> eps = cfg.epsilons;
    if (eps.empty()) {
      const double e = spec.epsilon.value_or(1e-3);
      eps = {e, e / 2, e / 4};
    }
    PerturbedSystem sys(spec.params(), spec.perturbation, eps.front());
    const Analysis analysis = analyze(sys, spec.kind() == SpecKind::Semisphere ? std::nullopt : std::optional(c));
    if (analysis.report.verdict == Verdict::Inconclusive) {
      err << "I == 0: nothing to verify\n";
      return static_cast<int>(kInconclusive);
    }
    VerifyConfig vc;
    vc.integrator = cfg.integrator;
    vc.measure_drift = spec.kind() != SpecKind::Semisphere && spec.kind() != SpecKind::Generic;
    const auto rows = verification_rows(sys, c, analysis.report, eps, vc);

    std::ostringstream csv;
    write_verification_csv(csv, rows);
    if (cfg.format == Format::Csv) {
      out << csv.str();
    } else {
      write_report_text(out, analysis.report);
      if (rows.empty()) out << "no roots to verify\n";
      write_verification_text(out, rows);
    }
    if (cfg.out_dir) {
      const std::filesystem::path dir(*cfg.out_dir);
      detail::write_file(dir / "verification.csv", csv.str());
      int index = 0;
      for (const auto& row : rows) {
        if (!row.cycle) continue;
        const State3 s0 = chart_inverse({row.cycle->x_star, 0.0, c * c, c});
        const double t_end = 2.0 * lift_cycle(sys.with_epsilon(row.epsilon), c, *row.cycle, cfg.integrator).period;
        const auto tr = integrate<3>(full_field(sys.with_epsilon(row.epsilon)), to_array(s0), 0.0, t_end,
                                     cfg.integrator, 4);
        std::ostringstream tcsv;
        write_trajectory_csv(tcsv, sys.params(), tr);
        detail::write_file(dir / ("cycle_" + std::to_string(index++) + ".csv"), tcsv.str());
      }
    }
    return static_cast<int>(kOk);
  });
}

/// Table of int_0^{2pi} sin^i cos^j for i + j <= max_degree as exact multiples of pi.
inline int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.format == Format::Csv) out << "i,j,value_over_pi\n";
    for (unsigned total = 0; total <= cfg.max_degree; ++total)
      for (unsigned i = 0; i <= total; ++i) {
        const unsigned j = total - i;
        const TrigMoment m = trig_moment(i, j);
        if (cfg.format == Format::Csv) out << i << ',' << j << ',' << format_rational(m.pi_multiple) << '\n';
        else out << "W(" << i << ", " << j << ") = " << (m.vanishes() ? "0" : format_rational(m.pi_multiple) + "*pi") << '\n';
      }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// Worked examples

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"example1",     "example2",     "homogeneous-m3", "homogeneous-m4",
                                              "homogeneous-m5", "homogeneous-m6", "homogeneous-m7"};
  return names;
}

namespace detail {

inline int run_example1(std::ostream& out) {
  const double mu[3] = {3.0, 2.0, 1.0};
  const double c = 1.0;
  const InertiaParams p = InertiaParams::from_moments(mu[0], mu[1], mu[2]);
  out << "# example1: mu = (3, 2, 1), c = 1, lambda1 = 1, lambda2 = -1 (pinned)\n";
  PerturbedSystem sys(p, two_monomial_field(1, -1), 0.0);
  const Analysis a = analyze(sys, c);
  out << format_closed_form(*a.closed_form) << '\n';
  write_report_text(out, a.report);
  const double expected = two_monomial_root(p, c);
  out << "alpha*beta*c^2/(beta - alpha) = " << std::setprecision(15) << expected << '\n';
  const bool ok = a.report.levels.size() == 1 && std::abs(a.report.levels[0].h_star - expected) <= 1e-12 * expected;
  out << (ok ? "root matches" : "root MISMATCH") << '\n';
  return ok ? kOk : kAssertionFailed;
}

inline int run_example2(const RunConfig& cfg, std::ostream& out) {
  const auto found = search_gain_field_case();
  if (!found) {
    out << "no parameter set passed the admissibility filter\n";
    return kAssertionFailed;
  }
  const InertiaParams p = InertiaParams::from_moments(found->mu[0], found->mu[1], found->mu[2]);
  out << "# example2: mu = (" << found->mu[0] << ", " << found->mu[1] << ", " << found->mu[2] << "), k = "
      << found->gain << ", c = " << found->c << " (chosen by search; c* = " << found->critical_radius << ")\n";
  PerturbedSystem sys(p, gain_field(exact(found->gain)), 0.0);

  for (double c : {0.9 * found->critical_radius, found->c}) {
    const Analysis a = analyze(sys, c);
    out << "c = " << c << (c < found->critical_radius ? " (< c*)" : " (> c*)") << '\n';
    out << format_closed_form(*a.closed_form) << '\n';
    write_report_text(out, a.report);
  }
  out << "2*alpha*beta/(alpha + beta) = " << gain_field_root(p) << '\n';

  const std::vector<double> eps = cfg.epsilons.empty() ? std::vector<double>{1e-2, 5e-3, 2.5e-3} : cfg.epsilons;
  VerifyConfig vc;
  vc.integrator = cfg.integrator;
  const auto rows = verify_level(sys, found->c, found->h_star, eps, vc);
  write_verification_text(out, rows);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!rows[k].cycle || !rows[k - 1].cycle) continue;
    const double prev = std::abs(rows[k - 1].cycle->h_num - found->h_star);
    const double cur = std::abs(rows[k].cycle->h_num - found->h_star);
    out << "  shrink factor eps " << rows[k - 1].epsilon << " -> " << rows[k].epsilon << ": " << prev / cur << '\n';
  }
  if (cfg.out_dir) {
    std::ostringstream csv;
    write_verification_csv(csv, rows);
    write_file(std::filesystem::path(*cfg.out_dir) / "example2_verification.csv", csv.str());
  }
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.converged; });
  return ok ? kOk : kNumericalFailure;
}

inline int run_homogeneous(unsigned m, std::ostream& out) {
  const InertiaParams p = InertiaParams::from_moments(3.0, 2.0, 1.0);
  const double c = 1.0;
  FieldSampler sampler(1000 + m);
  out << "# homogeneous-m" << m << ": mu = (3, 2, 1), c = 1, random homogeneous fields (seed " << 1000 + m << ")\n";
  bool ok = true;
  if (m == 7) {
    const double expected = two_monomial_root(p, c);
    for (int trial = 0; trial < 5; ++trial) {
      Rational l1 = sampler.coefficient(), l2 = sampler.coefficient();
      while (l1 * p.beta_exact() == l2 * p.alpha_exact()) l2 = sampler.coefficient();
      PerturbedSystem sys(p, degree7_field(sampler, l1, l2), 0.0);
      const Analysis a = analyze(sys, c);
      const bool single = a.report.levels.size() == 1;
      const double h = single ? a.report.levels[0].h_star : std::nan("");
      ok = ok && single && std::abs(h - expected) <= 1e-10 * std::abs(expected);
      out << "  lambda1 = " << format_rational(l1) << ", lambda2 = " << format_rational(l2) << ": h* = "
          << std::setprecision(15) << h << '\n';
    }
    out << "alpha*beta*c^2/(beta - alpha) = " << expected << '\n';
  } else {
    for (int trial = 0; trial < 5; ++trial) {
      PerturbedSystem sys(p, homogeneous_family_field(sampler, m), 0.0);
      const Analysis a = analyze(sys, c);
      out << "  " << format_closed_form(*a.closed_form) << "  roots: " << a.report.levels.size() << '\n';
      if (m == 3 || m == 5) ok = ok && a.closed_form->identically_zero();
      if (m == 4 || m == 6) {
        const unsigned k = m == 4 ? 1 : 2;
        const auto& r = a.closed_form->exact_coeffs;
        ok = ok && r.size() <= k + 2 && a.report.levels.size() <= k;
      }
    }
  }
  out << (ok ? "holds" : "VIOLATED") << '\n';
  return ok ? kOk : kAssertionFailed;
}

}  // namespace detail

inline int cmd_example(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (name == "example1") return detail::run_example1(out);
    if (name == "example2") return detail::run_example2(cfg, out);
    for (unsigned m = 3; m <= 7; ++m)
      if (name == "homogeneous-m" + std::to_string(m)) return detail::run_homogeneous(m, out);
    throw InvalidSpecError("unknown example '" + name + "'");
  });
}

}  // namespace eulertop::cli
