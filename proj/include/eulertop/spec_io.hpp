#pragma once

// JSON spec files.
//
//   {
//     "name": "example2",                       optional
//     "kind": "semisphere" | "tangent" | "cross_product" | "generic",
//     "params": {"mu": [mu1, mu2, mu3]}  or  {"alpha": a, "beta": b, "mu3": m3},
//     "c": 5.0,                                 sphere radius; required for semisphere
//     "epsilon": 0.001,                         optional default perturbation size
//     "field": {"P": "...", "Q": "...", "R": "..."}   semisphere (R defaults to 0)
//              {"A": "...", "B": "...", "C": "..."}   tangent, generic
//              {"L": "...", "M": "...", "N": "..."}   cross_product
//   }
//
// Printing keeps the parameter form that was read and writes polynomials in
// canonical form, so parse(print(parse(text))) == parse(text).

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "eulertop/error.hpp"
#include "eulertop/model.hpp"
#include "eulertop/perturbation.hpp"
#include "eulertop/polynomial.hpp"

namespace eulertop {

struct MomentsForm {
  std::array<double, 3> mu{};
  friend bool operator==(const MomentsForm&, const MomentsForm&) = default;
};

struct RatesForm {
  double alpha = 0.0;
  double beta = 0.0;
  double mu3 = 0.0;
  friend bool operator==(const RatesForm&, const RatesForm&) = default;
};

using ParamsForm = std::variant<MomentsForm, RatesForm>;

inline InertiaParams make_params(const ParamsForm& form, InertiaParams::Check check = InertiaParams::Check::Analysis) {
  if (const auto* m = std::get_if<MomentsForm>(&form)) return InertiaParams::from_moments(m->mu[0], m->mu[1], m->mu[2], check);
  const auto& r = std::get<RatesForm>(form);
  return InertiaParams::from_rates(r.alpha, r.beta, r.mu3, check);
}

struct SpecFile {
  std::string name;
  ParamsForm params_form;
  PerturbationSpec perturbation;
  std::optional<double> c;  ///< for semisphere specs this mirrors the intrinsic radius
  std::optional<double> epsilon;

  SpecKind kind() const { return kind_of(perturbation); }
  InertiaParams params(InertiaParams::Check check = InertiaParams::Check::Analysis) const {
    return make_params(params_form, check);
  }
};

namespace detail {

inline double number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw InvalidSpecError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidSpecError(std::string(what) + " must be finite");
  return v;
}

inline Poly3 field_poly(const nlohmann::json& field, const char* key, bool required) {
  if (!field.contains(key)) {
    if (required) throw InvalidSpecError(std::string("field.") + key + " is required");
    return Poly3{};
  }
  const auto& v = field.at(key);
  if (!v.is_string()) throw InvalidSpecError(std::string("field.") + key + " must be a polynomial string");
  return Poly3::parse(v.get<std::string>());
}

inline void only_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidSpecError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace detail

inline SpecFile spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidSpecError("spec must be a JSON object");
  detail::only_keys(j, {"name", "kind", "params", "c", "epsilon", "field"}, "spec");
  SpecFile out;
  if (j.contains("name")) out.name = j.at("name").get<std::string>();
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InvalidSpecError("spec.kind is required");
  const std::string kind = j.at("kind").get<std::string>();

  if (!j.contains("params") || !j.at("params").is_object()) throw InvalidSpecError("spec.params is required");
  const auto& params = j.at("params");
  if (params.contains("mu")) {
    detail::only_keys(params, {"mu"}, "params");
    const auto& mu = params.at("mu");
    if (!mu.is_array() || mu.size() != 3) throw InvalidSpecError("params.mu must hold three moments");
    out.params_form = MomentsForm{{detail::number(mu[0], "mu1"), detail::number(mu[1], "mu2"), detail::number(mu[2], "mu3")}};
  } else {
    detail::only_keys(params, {"alpha", "beta", "mu3"}, "params");
    if (!params.contains("alpha") || !params.contains("beta") || !params.contains("mu3"))
      throw InvalidSpecError("params needs either mu or alpha, beta and mu3");
    out.params_form = RatesForm{detail::number(params.at("alpha"), "alpha"), detail::number(params.at("beta"), "beta"),
                                detail::number(params.at("mu3"), "mu3")};
  }

  if (j.contains("c")) {
    out.c = detail::number(j.at("c"), "c");
    if (!(*out.c > 0.0)) throw InvalidSpecError("c must be positive");
  }
  if (j.contains("epsilon")) out.epsilon = detail::number(j.at("epsilon"), "epsilon");

  if (!j.contains("field") || !j.at("field").is_object()) throw InvalidSpecError("spec.field is required");
  const auto& field = j.at("field");
  if (kind == "semisphere") {
    detail::only_keys(field, {"P", "Q", "R"}, "field");
    if (!out.c) throw InvalidSpecError("semisphere specs require c");
    out.perturbation = SemisphereSpec{detail::field_poly(field, "P", true), detail::field_poly(field, "Q", true),
                                      detail::field_poly(field, "R", false), *out.c};
  } else if (kind == "tangent") {
    detail::only_keys(field, {"A", "B", "C"}, "field");
    out.perturbation = TangentFieldSpec::make(detail::field_poly(field, "A", true), detail::field_poly(field, "B", true),
                                              detail::field_poly(field, "C", true));
  } else if (kind == "cross_product") {
    detail::only_keys(field, {"L", "M", "N"}, "field");
    out.perturbation = CrossProductSpec{detail::field_poly(field, "L", true), detail::field_poly(field, "M", true),
                                        detail::field_poly(field, "N", true)};
  } else if (kind == "generic") {
    detail::only_keys(field, {"A", "B", "C"}, "field");
    out.perturbation = GenericFieldSpec{detail::field_poly(field, "A", true), detail::field_poly(field, "B", true),
                                        detail::field_poly(field, "C", true)};
  } else {
    throw InvalidSpecError("unknown spec kind '" + kind + "'");
  }
  return out;
}

inline SpecFile parse_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidSpecError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpecError(std::string("malformed spec: ") + e.what());
  }
}

inline SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpecError("cannot open spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

inline nlohmann::ordered_json to_json(const SpecFile& spec) {
  nlohmann::ordered_json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["kind"] = to_string(spec.kind());
  if (const auto* m = std::get_if<MomentsForm>(&spec.params_form)) {
    j["params"]["mu"] = {m->mu[0], m->mu[1], m->mu[2]};
  } else {
    const auto& r = std::get<RatesForm>(spec.params_form);
    j["params"]["alpha"] = r.alpha;
    j["params"]["beta"] = r.beta;
    j["params"]["mu3"] = r.mu3;
  }
  if (spec.c) j["c"] = *spec.c;
  if (spec.epsilon) j["epsilon"] = *spec.epsilon;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        auto& f = j["field"];
        if constexpr (std::is_same_v<T, SemisphereSpec>) {
          f["P"] = s.P.str();
          f["Q"] = s.Q.str();
          if (!s.R.is_zero()) f["R"] = s.R.str();
        } else if constexpr (std::is_same_v<T, TangentFieldSpec>) {
          f["A"] = s.A().str();
          f["B"] = s.B().str();
          f["C"] = s.C().str();
        } else if constexpr (std::is_same_v<T, CrossProductSpec>) {
          f["L"] = s.L.str();
          f["M"] = s.M.str();
          f["N"] = s.N.str();
        } else {
          f["A"] = s.A.str();
          f["B"] = s.B.str();
          f["C"] = s.C.str();
        }
      },
      spec.perturbation);
  return j;
}

inline std::string print_spec(const SpecFile& spec) { return to_json(spec).dump(2) + "\n"; }

/// Field-by-field equality of two parsed specs.
inline bool same_spec(const SpecFile& a, const SpecFile& b) {
  if (a.name != b.name || a.params_form != b.params_form || a.c != b.c || a.epsilon != b.epsilon) return false;
  if (a.kind() != b.kind()) return false;
  if (const auto* s = std::get_if<SemisphereSpec>(&a.perturbation)) {
    const auto& t = std::get<SemisphereSpec>(b.perturbation);
    return s->P == t.P && s->Q == t.Q && s->R == t.R && s->c == t.c;
  }
  const auto fa = *field_polynomials(a.perturbation);
  const auto fb = *field_polynomials(b.perturbation);
  if (a.kind() == SpecKind::CrossProduct) {
    const auto& x = std::get<CrossProductSpec>(a.perturbation);
    const auto& y = std::get<CrossProductSpec>(b.perturbation);
    return x.L == y.L && x.M == y.M && x.N == y.N;
  }
  return fa == fb;
}

}  // namespace eulertop
