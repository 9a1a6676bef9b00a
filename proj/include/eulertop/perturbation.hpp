#pragma once

// Casimir-compatible perturbations (A, B, C) of the Euler top:
//
//   semisphere     A = x3 P(x1,x2,D), B = x3 Q(x1,x2,D),
//                  C = (D - c^2)/(2 x3) R(x1,x2,D) - x1 P - x2 Q      (keeps S_c only)
//   tangent        any polynomial (A, B, C) with x1 A + x2 B + x3 C == 0 (keeps every S_c)
//   cross product  (A, B, C) = x X (L, M, N)                             (keeps every S_c)
//
// For the semisphere kind P, Q, R are written in the variables (x1, x2, x3)
// where the third slot stands for z = D = x1^2 + x2^2 + x3^2.

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "eulertop/error.hpp"
#include "eulertop/model.hpp"
#include "eulertop/polynomial.hpp"

namespace eulertop {

enum class SpecKind { Semisphere, Tangent, CrossProduct, Generic };

inline const char* to_string(SpecKind kind) {
  switch (kind) {
    case SpecKind::Semisphere: return "semisphere";
    case SpecKind::Tangent: return "tangent";
    case SpecKind::CrossProduct: return "cross_product";
    case SpecKind::Generic: return "generic";
  }
  return "?";
}

struct SemisphereSpec {
  Poly3 P, Q, R;
  double c = 1.0;
};

/// Polynomial field with x1 A + x2 B + x3 C == 0 verified in exact arithmetic.
class TangentFieldSpec {
 public:
  static TangentFieldSpec make(Poly3 A, Poly3 B, Poly3 C);

  const Poly3& A() const { return a_; }
  const Poly3& B() const { return b_; }
  const Poly3& C() const { return c_; }

 private:
  TangentFieldSpec(Poly3 A, Poly3 B, Poly3 C) : a_(std::move(A)), b_(std::move(B)), c_(std::move(C)) {}
  Poly3 a_, b_, c_;
};

struct CrossProductSpec {
  Poly3 L, M, N;
};

/// Arbitrary polynomial field; no sphere is preserved in general. Used for control runs.
struct GenericFieldSpec {
  Poly3 A, B, C;
};

using PerturbationSpec = std::variant<SemisphereSpec, TangentFieldSpec, CrossProductSpec, GenericFieldSpec>;

inline SpecKind kind_of(const PerturbationSpec& spec) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SemisphereSpec>) return SpecKind::Semisphere;
        else if constexpr (std::is_same_v<T, TangentFieldSpec>) return SpecKind::Tangent;
        else if constexpr (std::is_same_v<T, CrossProductSpec>) return SpecKind::CrossProduct;
        else return SpecKind::Generic;
      },
      spec);
}

/// x1 A + x2 B + x3 C; zero exactly when every sphere is invariant.
inline Poly3 tangency_residual(const Poly3& A, const Poly3& B, const Poly3& C) {
  return Poly3::variable(1) * A + Poly3::variable(2) * B + Poly3::variable(3) * C;
}

inline TangentFieldSpec TangentFieldSpec::make(Poly3 A, Poly3 B, Poly3 C) {
  const Poly3 residual = tangency_residual(A, B, C);
  if (!residual.is_zero())
    throw InvalidSpecError("field is not tangent to the spheres: x1 A + x2 B + x3 C = " + residual.str());
  return TangentFieldSpec(std::move(A), std::move(B), std::move(C));
}

/// (A, B, C) = (x3 M - x2 N, x1 N - x3 L, x2 L - x1 M).
inline TangentFieldSpec build_cross_product(const Poly3& L, const Poly3& M, const Poly3& N) {
  const Poly3 x1 = Poly3::variable(1), x2 = Poly3::variable(2), x3 = Poly3::variable(3);
  return TangentFieldSpec::make(x3 * M - x2 * N, x1 * N - x3 * L, x2 * L - x1 * M);
}

inline TangentFieldSpec build_cross_product(const CrossProductSpec& spec) {
  return build_cross_product(spec.L, spec.M, spec.N);
}

/// F(x1, x2, D(x)) for F written in (x1, x2, z).
inline Poly3 compose_with_casimir(const Poly3& F) { return F.substitute(3, casimir_poly()); }

/// Exact polynomials A, B and x3*C of a semisphere field (x3*C avoids the 1/x3 factor).
struct SemispherePolynomials {
  Poly3 A, B, x3C;
};

inline SemispherePolynomials semisphere_polynomials(const SemisphereSpec& spec) {
  const Poly3 x1 = Poly3::variable(1), x2 = Poly3::variable(2), x3 = Poly3::variable(3);
  const Poly3 P = compose_with_casimir(spec.P);
  const Poly3 Q = compose_with_casimir(spec.Q);
  const Poly3 R = compose_with_casimir(spec.R);
  const Rational c2 = exact(spec.c) * exact(spec.c);
  const Poly3 shifted = casimir_poly() - Poly3::constant(c2);
  return {x3 * P, x3 * Q, (shifted * R).scaled(Rational(1, 2)) - x3 * x1 * P - x3 * x2 * Q};
}

/// x1 A + x2 B + x3 C of a semisphere field; equals (D - c^2) R(x1, x2, D) / 2.
inline Poly3 semisphere_tangency_residual(const SemisphereSpec& spec) {
  const auto polys = semisphere_polynomials(spec);
  return Poly3::variable(1) * polys.A + Poly3::variable(2) * polys.B + polys.x3C;
}

/// Compiled evaluator of a perturbation field (A, B, C).
class FieldEvaluator {
 public:
  FieldEvaluator() = default;

  static FieldEvaluator polynomial(const Poly3& A, const Poly3& B, const Poly3& C) {
    FieldEvaluator f;
    f.kind_ = Kind::Polynomial;
    f.p_ = CompiledPoly(A);
    f.q_ = CompiledPoly(B);
    f.r_ = CompiledPoly(C);
    return f;
  }

  /// Semisphere field; off-sphere evaluation with |x3| below `x3_floor` is a domain error.
  static FieldEvaluator semisphere(const SemisphereSpec& spec, double x3_floor = 1e-12) {
    if (!(spec.c > 0.0)) throw InvalidSpecError("semisphere radius c must be positive");
    FieldEvaluator f;
    f.kind_ = Kind::Semisphere;
    f.p_ = CompiledPoly(spec.P);
    f.q_ = CompiledPoly(spec.Q);
    f.r_ = CompiledPoly(spec.R);
    f.c2_ = spec.c * spec.c;
    f.x3_floor_ = x3_floor;
    return f;
  }

  State3 operator()(const State3& s) const {
    if (kind_ == Kind::Polynomial) return {p_(s), q_(s), r_(s)};
    const double d = casimir(s);
    const double p = p_(s.x1, s.x2, d);
    const double q = q_(s.x1, s.x2, d);
    double c = -s.x1 * p - s.x2 * q;
    const double shift = d - c2_;
    if (shift != 0.0 && !r_.empty()) {
      if (std::abs(s.x3) < x3_floor_) throw DomainError("semisphere field evaluated at |x3| below the floor");
      c += shift / (2.0 * s.x3) * r_(s.x1, s.x2, d);
    } else if (s.x3 == 0.0) {
      throw DomainError("semisphere field is undefined on x3 = 0");
    }
    return {s.x3 * p, s.x3 * q, c};
  }

 private:
  enum class Kind { Polynomial, Semisphere };
  Kind kind_ = Kind::Polynomial;
  CompiledPoly p_, q_, r_;
  double c2_ = 0.0;
  double x3_floor_ = 1e-12;
};

inline FieldEvaluator build_semisphere(const Poly3& P, const Poly3& Q, const Poly3& R, double c,
                                       double x3_floor = 1e-12) {
  return FieldEvaluator::semisphere(SemisphereSpec{P, Q, R, c}, x3_floor);
}

/// Polynomial (A, B, C) for every kind except semisphere.
inline std::optional<std::array<Poly3, 3>> field_polynomials(const PerturbationSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<std::array<Poly3, 3>> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SemisphereSpec>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, TangentFieldSpec>) {
          return std::array<Poly3, 3>{s.A(), s.B(), s.C()};
        } else if constexpr (std::is_same_v<T, CrossProductSpec>) {
          const auto t = build_cross_product(s);
          return std::array<Poly3, 3>{t.A(), t.B(), t.C()};
        } else {
          return std::array<Poly3, 3>{s.A, s.B, s.C};
        }
      },
      spec);
}

inline FieldEvaluator make_evaluator(const PerturbationSpec& spec) {
  if (const auto* semi = std::get_if<SemisphereSpec>(&spec)) return FieldEvaluator::semisphere(*semi);
  const auto polys = field_polynomials(spec);
  return FieldEvaluator::polynomial((*polys)[0], (*polys)[1], (*polys)[2]);
}

/// Euler top plus epsilon times a perturbation field. Immutable; cheap to copy.
class PerturbedSystem {
 public:
  PerturbedSystem(InertiaParams params, PerturbationSpec spec, double epsilon)
      : params_(std::move(params)),
        spec_(std::make_shared<const PerturbationSpec>(std::move(spec))),
        field_(std::make_shared<const FieldEvaluator>(make_evaluator(*spec_))),
        epsilon_(epsilon) {
    if (!std::isfinite(epsilon)) throw InvalidSpecError("epsilon must be finite");
  }

  const InertiaParams& params() const { return params_; }
  const PerturbationSpec& spec() const { return *spec_; }
  SpecKind kind() const { return kind_of(*spec_); }
  double epsilon() const { return epsilon_; }
  const FieldEvaluator& perturbation() const { return *field_; }

  PerturbedSystem with_epsilon(double epsilon) const {
    PerturbedSystem copy = *this;
    copy.epsilon_ = epsilon;
    return copy;
  }

  State3 operator()(const State3& s) const {
    const State3 base = euler_field(params_, s);
    if (epsilon_ == 0.0) return base;
    return base + epsilon_ * (*field_)(s);
  }

 private:
  InertiaParams params_;
  std::shared_ptr<const PerturbationSpec> spec_;
  std::shared_ptr<const FieldEvaluator> field_;
  double epsilon_;
};

inline State3 perturbed_field(const PerturbedSystem& sys, const State3& s) { return sys(s); }

}  // namespace eulertop
