#pragma once

// Text front end for entropy inequalities.
//
//   ineq  := expr ("<=" | ">=") expr
//   expr  := ["+"|"-"] term (("+" | "-") term)*
//   term  := [rational ["*"]] atom | "0"
//   atom  := "H(" vars ")" | "H(" vars "|" vars ")"
//          | "I(" vars ";" vars ["|" vars] ")"
//   vars  := ident ("," ident)*
//   rational := digits ["/" digits]
//
// Conditional entropy and mutual information are expanded on the fly:
//   H(A|B)   = H(AB) - H(B)
//   I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C)

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/inequality.hpp"
#include "infodim/rational.hpp"

namespace infodim {

struct ParsedInequality {
  LinearInequality inequality;
  std::vector<std::string> variables;  // position i+1 is variables[i]
};

namespace detail {

class InequalityParser {
 public:
  InequalityParser(std::string_view src, std::optional<std::vector<std::string>> declared)
      : src_(src), declared_(declared.has_value()) {
    if (declared) {
      for (const auto& name : *declared) {
        if (positions_.contains(name)) throw Error("duplicate-variable", name);
        bind(name);
      }
    }
  }

  ParsedInequality parse() {
    expr(1);
    skip_ws();
    Rational lhs_sign;
    if (accept("<=")) {
      lhs_sign = -1;  // rhs - lhs >= 0
    } else if (accept(">=")) {
      lhs_sign = 1;
    } else {
      fail("expected '<=' or '>='");
    }
    const auto lhs = std::move(acc_);
    acc_.clear();
    expr(1);
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");

    std::map<std::uint32_t, Rational> total;
    for (const auto& [mask, c] : lhs) total[mask] += lhs_sign * c;
    for (const auto& [mask, c] : acc_) total[mask] -= lhs_sign * c;

    const int m = static_cast<int>(names_.size());
    if (m == 0) throw Error("zero-inequality", "no entropy terms");
    std::vector<Rational> coeffs(subset_count(m));
    for (const auto& [mask, c] : total) {
      if (mask != 0) coeffs[mask - 1] += c;
    }
    return {LinearInequality(m, std::move(coeffs)), names_};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("syntax", "at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(std::string_view(&ch, 1))) fail(std::string("expected '") + ch + "'");
  }

  [[nodiscard]] bool at_ident_start() const {
    return pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_');
  }

  std::string ident() {
    skip_ws();
    if (!at_ident_start()) fail("expected a variable name");
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  int bind(const std::string& name) {
    if (names_.size() >= static_cast<std::size_t>(kMaxVariables)) {
      throw Error("too-many-variables", "at most " + std::to_string(kMaxVariables) + " variables");
    }
    names_.push_back(name);
    const int position = static_cast<int>(names_.size());
    positions_[name] = position;
    return position;
  }

  int position_of(const std::string& name) {
    if (auto it = positions_.find(name); it != positions_.end()) return it->second;
    if (declared_) throw Error("unknown-variable", "'" + name + "' is not declared");
    return bind(name);
  }

  std::uint32_t vars() {
    skip_ws();
    if (pos_ < src_.size() && (src_[pos_] == ')' || src_[pos_] == '|' || src_[pos_] == ';')) {
      fail("empty variable list");
    }
    std::uint32_t mask = 0;
    do {
      mask |= 1u << (position_of(ident()) - 1);
    } while (accept(","));
    return mask;
  }

  void add(std::uint32_t mask, const Rational& c) {
    if (mask != 0) acc_[mask] += c;
  }

  void atom(const Rational& k) {
    skip_ws();
    const std::size_t start = pos_;
    const std::string name = at_ident_start() ? ident() : std::string();
    if (name != "H" && name != "I") {
      pos_ = start;
      fail("expected H(...) or I(...)");
    }
    expect('(');
    if (name == "H") {
      const std::uint32_t a = vars();
      if (accept("|")) {
        const std::uint32_t b = vars();
        add(a | b, k);
        add(b, -k);
      } else {
        add(a, k);
      }
    } else {
      const std::uint32_t a = vars();
      expect(';');
      const std::uint32_t b = vars();
      std::uint32_t c = 0;
      if (accept("|")) c = vars();
      add(a | c, k);
      add(b | c, k);
      add(a | b | c, -k);
      add(c, -k);
    }
    expect(')');
  }

  void term(const Rational& sign) {
    skip_ws();
    Rational k = sign;
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        const std::size_t den_start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (den_start == pos_) fail("expected a denominator");
      }
      const Rational value = parse_rational(src_.substr(start, pos_ - start));
      if (boost::multiprecision::denominator(value) == 0) fail("zero denominator");
      k *= value;
      const bool star = accept("*");
      skip_ws();
      if (!star && !at_ident_start()) {
        // bare constant: only zero has a meaning in a homogeneous inequality
        if (value != 0) fail("nonzero constant term");
        return;
      }
    }
    atom(k);
  }

  void expr(const Rational& outer) {
    Rational sign = outer;
    if (accept("-")) {
      sign = -outer;
    } else {
      accept("+");
    }
    term(sign);
    for (;;) {
      if (accept("+")) {
        term(outer);
      } else if (accept("-")) {
        term(-outer);
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  bool declared_;
  std::vector<std::string> names_;
  std::map<std::string, int> positions_;
  std::map<std::uint32_t, Rational> acc_;
};

}  // namespace detail

/// Parses inequality text into canonical form. Variables are bound to
/// positions in order of first appearance unless `declared` fixes the order
/// (then m is the declared count and unknown names are rejected).
inline ParsedInequality parse_inequality(std::string_view text,
                                         std::optional<std::vector<std::string>> declared = std::nullopt) {
  return detail::InequalityParser(text, std::move(declared)).parse();
}

/// Renders "l1 H(..) + l2 H(..) <= m1 H(..) + ..." with positive rational
/// coefficients; an empty side is written as "0".
inline std::string format_inequality(const LinearInequality& ineq, const std::vector<std::string>& names) {
  if (names.size() != static_cast<std::size_t>(ineq.m())) {
    throw Error("name-count", "expected " + std::to_string(ineq.m()) + " names, got " +
                                  std::to_string(names.size()));
  }
  auto side = [&names](const std::vector<LinearInequality::Weighted>& family) {
    if (family.empty()) return std::string("0");
    std::string out;
    for (const auto& [subset, weight] : family) {
      if (!out.empty()) out += " + ";
      out += to_string(weight) + " H(" + join_names(subset, names) + ")";
    }
    return out;
  };
  return side(ineq.left_family()) + " <= " + side(ineq.right_family());
}

/// Default names x1..xm.
inline std::vector<std::string> default_names(int m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace infodim
