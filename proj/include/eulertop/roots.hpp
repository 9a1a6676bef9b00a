#pragma once

// Univariate polynomials in s = sqrt(h) and real-root isolation.
//
// Coefficient vectors are ascending: c[0] + c[1] x + c[2] x^2 + ...
// Roots are bracketed between consecutive critical points (the roots of the
// derivative, found recursively), so on each bracket the polynomial is
// monotone and carries at most one root. Critical points where the value
// vanishes to working precision are multiple roots.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "eulertop/error.hpp"

namespace eulertop {

namespace poly1d {

inline std::vector<double> trimmed(std::span<const double> c) {
  std::vector<double> out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

template <class T>
T evaluate(std::span<const double> c, T x) {
  T acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<T>(*it);
  return acc;
}

inline std::vector<double> derivative(std::span<const double> c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

/// Sum of |c_k| |x|^k: the natural scale for rounding errors of evaluate().
inline double magnitude(std::span<const double> c, double x) {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

/// Every real root has modulus below this value.
inline double cauchy_bound(std::span<const double> c) {
  const auto t = trimmed(c);
  if (t.size() < 2) return 1.0;
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) m = std::max(m, std::abs(t[k] / t.back()));
  return 1.0 + m;
}

/// Sign changes in the coefficient sequence (zeros skipped); bounds the number of positive roots.
inline int sign_variations(std::span<const double> c) {
  int changes = 0;
  int last = 0;
  for (double v : c) {
    if (v == 0.0) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots in (a, b] from a Sturm chain evaluated in long double.
inline int sturm_count(std::span<const double> coeffs, double a, double b) {
  using LD = long double;
  std::vector<std::vector<LD>> chain;
  auto trim = [](std::vector<LD>& p, LD tol) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
  };
  std::vector<LD> p0(coeffs.begin(), coeffs.end());
  trim(p0, 0);
  if (p0.size() < 2) return 0;
  std::vector<LD> p1;
  for (std::size_t k = 1; k < p0.size(); ++k) p1.push_back(static_cast<LD>(k) * p0[k]);
  chain.push_back(p0);
  chain.push_back(p1);
  while (chain.back().size() > 1) {
    std::vector<LD> rem = chain[chain.size() - 2];
    const std::vector<LD>& div = chain.back();
    LD scale = 0;
    for (LD v : rem) scale = std::max(scale, std::abs(v));
    while (rem.size() >= div.size()) {
      const LD q = rem.back() / div.back();
      const std::size_t shift = rem.size() - div.size();
      for (std::size_t k = 0; k < div.size(); ++k) rem[shift + k] -= q * div[k];
      rem.pop_back();
    }
    for (LD& v : rem) v = -v;
    trim(rem, scale * 1e-13L);
    if (rem.empty()) break;
    chain.push_back(std::move(rem));
  }
  auto variations = [&](LD x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
      LD acc = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
      if (acc == 0) continue;
      const int s = acc > 0 ? 1 : -1;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  };
  return variations(a) - variations(b);
}

namespace detail {

inline double bisect(std::span<const double> c, double a, double b) {
  double fa = evaluate<double>(c, a);
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = evaluate<double>(c, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  double x = 0.5 * (a + b);
  const auto d = derivative(c);
  for (int polish = 0; polish < 2; ++polish) {
    const double dv = evaluate<double>(d, x);
    if (dv == 0.0) break;
    const double next = x - evaluate<double>(c, x) / dv;
    if (!(next >= a && next <= b)) break;
    x = next;
  }
  return x;
}

inline bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace detail

/// Distinct real roots in the open interval (lo, hi), ascending.
inline std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi) {
  const auto c = trimmed(coeffs);
  if (c.size() < 2 || !(lo < hi)) return {};
  if (c.size() == 2) {
    const double r = -c[0] / c[1];
    return (r > lo && r < hi) ? std::vector<double>{r} : std::vector<double>{};
  }
  const auto d = derivative(c);
  const auto critical = real_roots(d, lo, hi);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> multiple;
  for (double x : critical)
    if (std::abs(evaluate<double>(c, x)) <= 64.0 * eps * magnitude(c, x)) multiple.push_back(x);

  std::vector<double> nodes;
  nodes.push_back(lo);
  nodes.insert(nodes.end(), critical.begin(), critical.end());
  nodes.push_back(hi);

  std::vector<double> roots = multiple;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double a = nodes[k];
    const double b = nodes[k + 1];
    const double fa = evaluate<double>(c, a);
    const double fb = evaluate<double>(c, b);
    if (fa == 0.0 || fb == 0.0 || (fa > 0) == (fb > 0)) continue;
    const double r = detail::bisect(c, a, b);
    const bool merged = std::any_of(multiple.begin(), multiple.end(),
                                    [&](double m) { return detail::near(m, r, 1e-7); });
    if (!merged) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return detail::near(a, b, 1e-12); }),
              roots.end());
  return roots;
}

}  // namespace poly1d

enum class Parity { Zero, Even, Odd, Mixed };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::Zero: return "zero";
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

/// Polynomial in s = sqrt(h); coeffs()[k] multiplies s^k.
class SqrtPoly {
 public:
  SqrtPoly() = default;
  explicit SqrtPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    bool even = false;
    bool odd = false;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0.0) continue;
      (k % 2 == 0 ? even : odd) = true;
    }
    parity_ = even && odd ? Parity::Mixed : even ? Parity::Even : odd ? Parity::Odd : Parity::Zero;
  }

  const std::vector<double>& coeffs() const { return coeffs_; }
  Parity parity() const { return parity_; }
  bool is_zero() const { return parity_ == Parity::Zero; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double s) const { return poly1d::evaluate<double>(coeffs_, s); }
  double derivative(double s) const { return poly1d::evaluate<double>(poly1d::derivative(coeffs_), s); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (double v : coeffs_) m = std::max(m, std::abs(v));
    return m;
  }

  /// For even or odd parity: the polynomial q with body(s) = q(s^2) or s q(s^2).
  std::vector<double> h_polynomial() const {
    if (parity_ == Parity::Mixed) throw DomainError("mixed-parity polynomial in sqrt(h) is not a polynomial in h");
    std::vector<double> q;
    const std::size_t start = parity_ == Parity::Odd ? 1 : 0;
    for (std::size_t k = start; k < coeffs_.size(); k += 2) q.push_back(coeffs_[k]);
    return q;
  }

 private:
  std::vector<double> coeffs_;
  Parity parity_ = Parity::Zero;
};

struct RootInfo {
  double h = 0.0;           ///< root in h = s^2
  double s = 0.0;           ///< root in s
  bool simple = false;      ///< |M'(s)| > 1e-9 max|coeff|
  bool borderline = false;  ///< |M'(s)| within two decades of the simplicity threshold
  double derivative = 0.0;  ///< M'(s) at the root
};

struct RootReport {
  std::vector<RootInfo> roots;  ///< ascending in h, all h > 0
  int descartes_bound = 0;
  int sturm_count = 0;  ///< distinct positive roots per the Sturm chain (cross-check)
};

inline constexpr double kSimplicityTolerance = 1e-9;

/// Roots h > 0 of a polynomial in s = sqrt(h).
inline RootReport positive_roots(const SqrtPoly& m) {
  if (m.is_zero()) throw IdenticallyZeroError("I == 0: first-order analysis is inconclusive");

  std::vector<double> q = m.parity() == Parity::Mixed ? m.coeffs() : m.h_polynomial();
  const bool in_h = m.parity() != Parity::Mixed;
  std::size_t zeros = 0;
  while (zeros < q.size() && q[zeros] == 0.0) ++zeros;
  q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(zeros));

  RootReport report;
  report.descartes_bound = poly1d::sign_variations(q);
  const double bound = poly1d::cauchy_bound(q);
  report.sturm_count = poly1d::sturm_count(q, 0.0, bound);

  const double threshold = kSimplicityTolerance * m.max_abs_coeff();
  for (double r : poly1d::real_roots(q, 0.0, bound)) {
    RootInfo info;
    info.s = in_h ? std::sqrt(r) : r;
    info.h = in_h ? r : r * r;
    info.derivative = m.derivative(info.s);
    const double mag = std::abs(info.derivative);
    info.simple = mag > threshold;
    info.borderline = mag > threshold * 1e-2 && mag < threshold * 1e2;
    report.roots.push_back(info);
  }
  return report;
}

}  // namespace eulertop
