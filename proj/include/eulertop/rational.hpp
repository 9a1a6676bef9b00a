#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "eulertop/error.hpp"

namespace eulertop {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact binary value of a finite double.
inline Rational exact(double value) {
  if (!std::isfinite(value)) throw InvalidSpecError("non-finite value cannot be made exact");
  return Rational(value);
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline Rational rational_pow(Rational base, unsigned exponent) {
  Rational result = 1;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

inline std::string format_rational(const Rational& r) { return r.str(); }

/// Parses "12", "-3/4", "0.125", "2.5e-3" exactly (decimals are read as decimal fractions).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return InvalidSpecError("malformed number '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';

  BigInt mantissa = 0;
  int scale = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    mantissa = mantissa * 10 + (text[pos++] - '0');
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      mantissa = mantissa * 10 + (text[pos++] - '0');
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) exp_negative = text[pos++] == '-';
    int exponent = 0;
    bool exp_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos++] - '0');
      exp_digit = true;
      if (exponent > 4000) throw fail();
    }
    if (!exp_digit) throw fail();
    scale += exp_negative ? -exponent : exponent;
  }
  Rational value(mantissa);
  if (scale > 0) value *= rational_pow(Rational(10), static_cast<unsigned>(scale));
  if (scale < 0) value /= rational_pow(Rational(10), static_cast<unsigned>(-scale));
  skip_ws();
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    skip_ws();
    BigInt denominator = 0;
    bool den_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      denominator = denominator * 10 + (text[pos++] - '0');
      den_digit = true;
    }
    if (!den_digit || denominator == 0) throw fail();
    value /= Rational(denominator);
  }
  skip_ws();
  if (pos != text.size()) throw fail();
  return negative ? Rational(-value) : value;
}

}  // namespace eulertop
