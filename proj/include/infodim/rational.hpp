#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "infodim/error.hpp"

namespace infodim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("invalid-rational", "zero denominator");
  return Rational(num, den);
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  const BigInt& num = boost::multiprecision::numerator(q);
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// log2 of a positive big integer, usable beyond the double range.
inline double log2_big(const BigInt& n) {
  if (n <= 0) throw Error("domain", "log2 of a nonpositive integer");
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) return std::log2(n.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigInt top = n >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

namespace detail {

inline BigInt parse_integer_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error("invalid-rational", "'" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error("invalid-rational", "'" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace detail

/// Accepts "p", "-p", "+p" and "p/q" with decimal digits, surrounding
/// whitespace ignored.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  BigInt num = detail::parse_integer_digits(body.substr(0, slash), text);
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    den = detail::parse_integer_digits(body.substr(slash + 1), text);
  }
  if (negative) num = -num;
  return make_rational(num, den);
}

}  // namespace infodim
