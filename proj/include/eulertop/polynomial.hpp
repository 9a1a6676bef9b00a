#pragma once

// Sparse trivariate polynomials with exact rational coefficients.
//
// Canonical text form: terms in graded-lexicographic order (higher total degree
// first, then larger exponent of x1, x2, x3), e.g.
//
//     3/2*x1^2*x2 - x3^2 + x1 - 7/3
//
// The parser also accepts parentheses, implicit multiplication ("2 x1 x2"),
// decimal literals (read exactly), division by constants and the aliases
// x, y, z for x1, x2, x3.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "eulertop/error.hpp"
#include "eulertop/model.hpp"
#include "eulertop/rational.hpp"

namespace eulertop {

class DegreeOverflowError : public InvalidSpecError {
 public:
  using InvalidSpecError::InvalidSpecError;
};

struct Monomial {
  unsigned i = 0;
  unsigned j = 0;
  unsigned k = 0;

  unsigned degree() const { return i + j + k; }
  unsigned exponent(int var) const { return var == 1 ? i : var == 2 ? j : k; }
  unsigned& exponent(int var) { return var == 1 ? i : var == 2 ? j : k; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) { return {a.i + b.i, a.j + b.j, a.k + b.k}; }

/// Higher total degree first, then lexicographically larger exponent vectors.
struct GradedLexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return std::tie(a.i, a.j, a.k) > std::tie(b.i, b.j, b.k);
  }
};

class Poly3 {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexOrder>;
  static constexpr unsigned kDefaultMaxDegree = 64;

  Poly3() = default;
  /// Lowers the degree cap for this polynomial and everything derived from it.
  explicit Poly3(unsigned max_degree) : max_degree_(std::min(max_degree, kDefaultMaxDegree)) {}

  static Poly3 constant(const Rational& value) { return monomial({}, value); }

  /// x1, x2 or x3 for index 1, 2, 3.
  static Poly3 variable(int index) {
    if (index < 1 || index > 3) throw InvalidSpecError("variable index must be 1, 2 or 3");
    Monomial m;
    m.exponent(index) = 1;
    return monomial(m, 1);
  }

  static Poly3 monomial(const Monomial& m, const Rational& coeff) {
    Poly3 p;
    p.check_degree(m.degree());
    p.add_term(m, coeff);
    return p;
  }

  static Poly3 parse(std::string_view text, unsigned max_degree = kDefaultMaxDegree);

  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }
  unsigned max_degree() const { return max_degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  unsigned degree_in(int var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
  }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return static_cast<int>(t.first.degree()) == degree(); });
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly3& operator+=(const Poly3& other) {
    max_degree_ = std::min(max_degree_, other.max_degree_);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Poly3& operator-=(const Poly3& other) {
    max_degree_ = std::min(max_degree_, other.max_degree_);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  Poly3& operator*=(const Poly3& other) {
    *this = *this * other;
    return *this;
  }

  friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
  friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
  friend Poly3 operator-(const Poly3& a) { return a.scaled(-1); }

  friend Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 out(std::min(a.max_degree_, b.max_degree_));
    if (a.is_zero() || b.is_zero()) return out;
    out.check_degree(static_cast<unsigned>(a.degree() + b.degree()));
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  friend Poly3 operator*(const Rational& k, const Poly3& p) { return p.scaled(k); }
  friend Poly3 operator*(const Poly3& p, const Rational& k) { return p.scaled(k); }

  Poly3 scaled(const Rational& factor) const {
    Poly3 out(max_degree_);
    if (factor == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
  }

  Poly3 pow(unsigned exponent) const {
    Poly3 result = constant(1);
    result.max_degree_ = max_degree_;
    Poly3 base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent != 0) base *= base;
    }
    return result;
  }

  /// Replaces variable `var` by `replacement` everywhere.
  Poly3 substitute(int var, const Poly3& replacement) const {
    Poly3 out(std::min(max_degree_, replacement.max_degree_));
    std::vector<Poly3> powers{constant(1)};
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.exponent(var);
      while (powers.size() <= e) powers.push_back(powers.back() * replacement);
      Monomial rest = m;
      rest.exponent(var) = 0;
      out += monomial(rest, c) * powers[e];
    }
    return out;
  }

  /// Substitutes a rational constant for variable `var`.
  Poly3 substitute(int var, const Rational& value) const { return substitute(var, constant(value)); }

  Poly3 derivative(int var) const {
    Poly3 out(max_degree_);
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.exponent(var);
      if (e == 0) continue;
      Monomial d = m;
      d.exponent(var) = e - 1;
      out.add_term(d, c * e);
    }
    return out;
  }

  Rational evaluate_exact(const Rational& x1, const Rational& x2, const Rational& x3) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) sum += c * rational_pow(x1, m.i) * rational_pow(x2, m.j) * rational_pow(x3, m.k);
    return sum;
  }

  /// Float evaluation; for repeated evaluation use CompiledPoly.
  double evaluate(double x1, double x2, double x3) const;
  double evaluate(const State3& s) const { return evaluate(s.x1, s.x2, s.x3); }

  std::string str() const;

  friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }
  friend std::ostream& operator<<(std::ostream& os, const Poly3& p) { return os << p.str(); }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void check_degree(unsigned d) const {
    if (d > max_degree_)
      throw DegreeOverflowError("polynomial degree " + std::to_string(d) + " exceeds the configured maximum " +
                                std::to_string(max_degree_));
  }

  TermMap terms_;
  unsigned max_degree_ = kDefaultMaxDegree;
};

/// Double-precision snapshot of a Poly3 for fast repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly3& p) {
    terms_.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
      terms_.push_back({m.i, m.j, m.k, to_double(c)});
      max_exp_[0] = std::max(max_exp_[0], m.i);
      max_exp_[1] = std::max(max_exp_[1], m.j);
      max_exp_[2] = std::max(max_exp_[2], m.k);
    }
  }

  bool empty() const { return terms_.empty(); }

  double operator()(double x1, double x2, double x3) const {
    if (terms_.empty()) return 0.0;
    std::array<double, Poly3::kDefaultMaxDegree + 1> p1{}, p2{}, p3{};
    fill_powers(p1, x1, max_exp_[0]);
    fill_powers(p2, x2, max_exp_[1]);
    fill_powers(p3, x3, max_exp_[2]);
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coeff * p1[t.i] * p2[t.j] * p3[t.k];
    return sum;
  }

  double operator()(const State3& s) const { return (*this)(s.x1, s.x2, s.x3); }

 private:
  struct Term {
    unsigned i, j, k;
    double coeff;
  };

  static void fill_powers(std::array<double, Poly3::kDefaultMaxDegree + 1>& out, double x, unsigned n) {
    out[0] = 1.0;
    for (unsigned e = 1; e <= n; ++e) out[e] = out[e - 1] * x;
  }

  std::vector<Term> terms_;
  std::array<unsigned, 3> max_exp_{0, 0, 0};
};

inline double Poly3::evaluate(double x1, double x2, double x3) const { return CompiledPoly(*this)(x1, x2, x3); }

inline std::string Poly3::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string factors;
    for (int var = 1; var <= 3; ++var) {
      const unsigned e = m.exponent(var);
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(var);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += format_rational(magnitude);
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += format_rational(magnitude) + "*" + factors;
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, unsigned max_degree) : text_(text), max_degree_(max_degree) {}

  Poly3 parse() {
    Poly3 p = expression();
    skip_ws();
    if (pos_ != text_.size()) throw error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  InvalidSpecError error(const std::string& what) const {
    return InvalidSpecError("polynomial '" + std::string(text_) + "': " + what + " at offset " +
                            std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool starts_primary(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '(' || ch == 'x' || ch == 'y' ||
           ch == 'z';
  }

  Poly3 expression() {
    Poly3 acc = term();
    for (char ch = peek(); ch == '+' || ch == '-'; ch = peek()) {
      ++pos_;
      if (ch == '+')
        acc += term();
      else
        acc -= term();
    }
    return acc;
  }

  Poly3 term() {
    Poly3 acc = unary();
    for (;;) {
      const char ch = peek();
      if (ch == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (ch == '/') {
        ++pos_;
        const Poly3 divisor = unary();
        if (divisor.degree() != 0) throw error("division is only allowed by nonzero constants");
        acc = acc.scaled(Rational(1) / divisor.coefficient({}));
      } else if (starts_primary(ch)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly3 unary() {
    const char ch = peek();
    if (ch == '-') {
      ++pos_;
      return -unary();
    }
    if (ch == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly3 power() {
    Poly3 base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      unsigned long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
        if (e > max_degree_) throw DegreeOverflowError("exponent exceeds the configured maximum degree");
      }
      if (pos_ == start) throw error("expected a nonnegative integer exponent");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly3 primary() {
    const char ch = peek();
    if (ch == '(') {
      ++pos_;
      Poly3 inner = expression();
      if (peek() != ')') throw error("missing ')'");
      ++pos_;
      return inner;
    }
    if (ch == 'x' || ch == 'y' || ch == 'z') {
      ++pos_;
      int var = ch == 'x' ? 1 : ch == 'y' ? 2 : 3;
      if (ch == 'x' && pos_ < text_.size() && text_[pos_] >= '1' && text_[pos_] <= '3') var = text_[pos_++] - '0';
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        throw error("unknown variable");
      Poly3 v(max_degree_);
      v += Poly3::variable(var);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      Poly3 c(max_degree_);
      c += Poly3::constant(parse_rational(text_.substr(start, pos_ - start)));
      return c;
    }
    throw error(ch == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned max_degree_;
};

}  // namespace detail

inline Poly3 Poly3::parse(std::string_view text, unsigned max_degree) {
  return detail::PolyParser(text, max_degree).parse();
}

/// x1^2 + x2^2 + x3^2 as a polynomial.
inline Poly3 casimir_poly() {
  return Poly3::variable(1).pow(2) + Poly3::variable(2).pow(2) + Poly3::variable(3).pow(2);
}

}  // namespace eulertop
