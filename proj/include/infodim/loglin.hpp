#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/rational.hpp"

namespace infodim {

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

/// Largest intermediate big-integer size (in bits) the sign test will build.
inline constexpr std::size_t kMaxIntermediateBits = std::size_t{1} << 24;

/// Formal sum  sum_i q_i * log2(n_i)  with rational q_i and integer n_i >= 1.
///
/// Values are never evaluated exactly; only the sign of a combination is
/// decided (see loglin_sign). Terms with n = 1 are zero and are dropped by
/// normalized().
class ExactLogLin {
 public:
  struct Term {
    Rational coeff;
    BigInt arg;
  };

  ExactLogLin() = default;

  /// coeff * log2(n)
  static ExactLogLin log2_of(const BigInt& n, const Rational& coeff = 1) {
    ExactLogLin out;
    out.add_term(coeff, n);
    return out;
  }

  /// A rational number of bits, stored as q * log2(2).
  static ExactLogLin constant(const Rational& bits) { return log2_of(2, bits); }

  void add_term(const Rational& coeff, const BigInt& arg) {
    if (arg < 1) throw Error("domain", "log2 argument must be a positive integer, got " + arg.str());
    if (coeff != 0 && arg != 1) terms_.push_back({coeff, arg});
  }

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

  /// Merges equal arguments and drops vanishing terms; terms end up sorted by argument.
  [[nodiscard]] ExactLogLin normalized() const {
    std::map<BigInt, Rational> merged;
    for (const auto& t : terms_) merged[t.arg] += t.coeff;
    ExactLogLin out;
    for (const auto& [arg, coeff] : merged) out.add_term(coeff, arg);
    return out;
  }

  [[nodiscard]] double to_double() const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += infodim::to_double(t.coeff) * log2_big(t.arg);
    return sum;
  }

  /// Canonical text such as "log2(3) - 1/2": powers of two fold into a
  /// trailing rational constant, other terms appear by ascending argument.
  [[nodiscard]] std::string to_string() const;

  ExactLogLin& operator+=(const ExactLogLin& rhs) {
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    return *this;
  }
  ExactLogLin& operator-=(const ExactLogLin& rhs) { return *this += -rhs; }
  ExactLogLin& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= k;
    return *this;
  }

  friend ExactLogLin operator+(ExactLogLin a, const ExactLogLin& b) { return a += b; }
  friend ExactLogLin operator-(ExactLogLin a, const ExactLogLin& b) { return a -= b; }
  friend ExactLogLin operator*(ExactLogLin a, const Rational& k) { return a *= k; }
  friend ExactLogLin operator*(const Rational& k, ExactLogLin a) { return a *= k; }
  friend ExactLogLin operator-(ExactLogLin a) {
    for (auto& t : a.terms_) t.coeff = -t.coeff;
    return a;
  }

 private:
  std::vector<Term> terms_;
};

namespace detail {

/// Exact power of two exponent of n, or -1.
inline long power_of_two_exponent(const BigInt& n) {
  if (n <= 0) return -1;
  const auto low = boost::multiprecision::lsb(n);
  const auto high = boost::multiprecision::msb(n);
  return low == high ? static_cast<long>(high) : -1;
}

inline std::size_t bit_length(const BigInt& n) {
  return n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
}

/// base^exp by repeated squaring; throws before any intermediate would
/// exceed the bit limit.
inline BigInt checked_pow(const BigInt& base, BigInt exp, std::size_t bit_limit) {
  const std::size_t base_bits = bit_length(base);
  if (base_bits > 1 && exp > BigInt(bit_limit) / (base_bits - 1)) {
    throw Error("size-limit", "power " + base.str() + "^" + exp.str() + " exceeds " +
                                  std::to_string(bit_limit) + " bits");
  }
  BigInt result = 1;
  BigInt acc = base;
  while (exp > 0) {
    if ((exp & 1) != 0) {
      result *= acc;
      if (bit_length(result) > bit_limit) throw Error("size-limit", "intermediate product too large");
    }
    exp >>= 1;
    if (exp > 0) {
      acc *= acc;
      if (bit_length(acc) > bit_limit) throw Error("size-limit", "intermediate square too large");
    }
  }
  return result;
}

}  // namespace detail

/// Sign of sum q_i log2(n_i). Denominators are cleared to integer exponents
/// e_i and the products prod_{e_i>0} n_i^{e_i} and prod_{e_i<0} n_i^{-e_i}
/// are compared as big integers.
inline Sign loglin_sign(const ExactLogLin& x, std::size_t bit_limit = kMaxIntermediateBits) {
  const ExactLogLin norm = x.normalized();
  if (norm.empty()) return Sign::zero;

  bool any_pos = false;
  bool any_neg = false;
  for (const auto& t : norm.terms()) (t.coeff > 0 ? any_pos : any_neg) = true;
  // every argument is > 1 here, so every log is strictly positive
  if (!any_neg) return Sign::positive;
  if (!any_pos) return Sign::negative;

  BigInt den_lcm = 1;
  for (const auto& t : norm.terms()) {
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(t.coeff));
  }
  std::vector<BigInt> exps;
  BigInt exp_gcd = 0;
  for (const auto& t : norm.terms()) {
    const Rational scaled = t.coeff * den_lcm;
    BigInt e = boost::multiprecision::numerator(scaled);
    exp_gcd = boost::multiprecision::gcd(exp_gcd, e < 0 ? BigInt(-e) : e);
    exps.push_back(std::move(e));
  }

  std::size_t pos_bits = 0;
  std::size_t neg_bits = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] /= exp_gcd;
    const BigInt mag = exps[i] < 0 ? BigInt(-exps[i]) : exps[i];
    const BigInt estimate = mag * detail::bit_length(norm.terms()[i].arg);
    if (estimate > bit_limit) {
      throw Error("size-limit", "sign test needs more than " + std::to_string(bit_limit) + " bits");
    }
    (exps[i] > 0 ? pos_bits : neg_bits) += estimate.convert_to<std::size_t>();
  }
  if (pos_bits > bit_limit || neg_bits > bit_limit) {
    throw Error("size-limit", "sign test needs more than " + std::to_string(bit_limit) + " bits");
  }

  BigInt pos = 1;
  BigInt neg = 1;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const BigInt& arg = norm.terms()[i].arg;
    if (exps[i] > 0) {
      pos *= detail::checked_pow(arg, exps[i], bit_limit);
    } else {
      neg *= detail::checked_pow(arg, -exps[i], bit_limit);
    }
  }
  if (pos > neg) return Sign::positive;
  if (pos < neg) return Sign::negative;
  return Sign::zero;
}

/// Sign of a - b.
inline Sign compare(const ExactLogLin& a, const ExactLogLin& b) { return loglin_sign(a - b); }

inline bool same_value(const ExactLogLin& a, const ExactLogLin& b) {
  return compare(a, b) == Sign::zero;
}

inline std::string ExactLogLin::to_string() const {
  const ExactLogLin norm = normalized();
  Rational constant = 0;
  std::vector<std::pair<Rational, BigInt>> logs;
  for (const auto& t : norm.terms()) {
    const long k = detail::power_of_two_exponent(t.arg);
    if (k >= 0) {
      constant += t.coeff * k;
    } else {
      logs.emplace_back(t.coeff, t.arg);
    }
  }

  std::string out;
  auto append = [&out](const Rational& coeff, const std::string& body) {
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    std::string piece;
    if (body.empty()) {
      piece = infodim::to_string(mag);
    } else if (mag == 1) {
      piece = body;
    } else {
      piece = infodim::to_string(mag) + "*" + body;
    }
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " : " + ";
      out += piece;
    }
  };
  for (const auto& [coeff, arg] : logs) append(coeff, "log2(" + arg.str() + ")");
  if (constant != 0) append(constant, "");
  return out.empty() ? "0" : out;
}

/// Parses the canonical rendering: terms "[q[*]]log2(n)" or "q" joined by
/// '+' / '-', e.g. "log2(3) - 1/2" or "-3/2*log2(5) + 2".
inline ExactLogLin parse_loglin(std::string_view text) {
  ExactLogLin out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("syntax", "log expression at position " + std::to_string(pos) + ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_rational = [&]() -> std::string_view {
    const std::size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
    return text.substr(start, pos - start);
  };

  bool first = true;
  skip_ws();
  while (pos < text.size() || first) {
    Rational sign = 1;
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = parse_rational(read_rational());
      have_coeff = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    if (text.substr(pos, 5) == "log2(") {
      pos += 5;
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos || pos >= text.size() || text[pos] != ')') throw fail("malformed log2(...)");
      const BigInt arg(std::string(text.substr(start, pos - start)));
      ++pos;
      out.add_term(sign * coeff, arg);
    } else if (have_coeff) {
      out += ExactLogLin::constant(sign * coeff);
    } else {
      throw fail("expected a rational or log2(n)");
    }
    skip_ws();
  }
  return out;
}

}  // namespace infodim
