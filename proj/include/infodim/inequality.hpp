#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "infodim/entropy_vector.hpp"
#include "infodim/error.hpp"
#include "infodim/rational.hpp"
#include "infodim/subset.hpp"

namespace infodim {

/// Linear entropy inequality in canonical form  sum_T c_T H(T) >= 0.
///
/// Subsets with negative coefficients form the left family (lambda_I = -c_I),
/// positive ones the right family (mu_J = c_J), giving the split view
/// sum lambda_I H(I) <= sum mu_J H(J).
class LinearInequality {
 public:
  struct Weighted {
    SubsetIndex subset;
    Rational weight;
  };

  LinearInequality(int m, std::vector<Rational> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    check_variable_count(m);
    if (coeffs_.size() != subset_count(m)) {
      throw Error("dimension-mismatch", "expected " + std::to_string(subset_count(m)) + " coefficients");
    }
    bool nonzero = false;
    for (const auto& c : coeffs_) nonzero = nonzero || c != 0;
    if (!nonzero) throw Error("zero-inequality", "all coefficients vanish");
  }

  /// Sparse construction from (mask, coefficient) pairs; repeated masks add up.
  static LinearInequality from_terms(int m, const std::vector<std::pair<std::uint32_t, Rational>>& terms) {
    check_variable_count(m);
    std::vector<Rational> coeffs(subset_count(m));
    for (const auto& [mask, c] : terms) {
      const SubsetIndex s(mask);
      if (!s.fits(m)) throw Error("invalid-subset", to_string(s) + " exceeds m=" + std::to_string(m));
      coeffs[s.slot()] += c;
    }
    return {m, std::move(coeffs)};
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const Rational& coeff(SubsetIndex s) const { return coeffs_.at(s.slot()); }

  /// (I, lambda_I) for every negative coefficient, ascending subset order.
  [[nodiscard]] std::vector<Weighted> left_family() const {
    std::vector<Weighted> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] < 0) out.push_back({SubsetIndex(static_cast<std::uint32_t>(i + 1)), -coeffs_[i]});
    }
    return out;
  }

  /// (J, mu_J) for every positive coefficient.
  [[nodiscard]] std::vector<Weighted> right_family() const {
    std::vector<Weighted> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] > 0) out.push_back({SubsetIndex(static_cast<std::uint32_t>(i + 1)), coeffs_[i]});
    }
    return out;
  }

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;

 private:
  int m_;
  std::vector<Rational> coeffs_;
};

/// Rational point in entropy coordinates; need not come from a distribution.
struct PolymatroidPoint {
  int m;
  std::vector<Rational> values;
};

using SlackValue = std::variant<double, ExactLogLin>;

namespace detail {
inline void check_same_m(const LinearInequality& ineq, int m) {
  if (ineq.m() != m) {
    throw Error("dimension-mismatch",
                "inequality has m=" + std::to_string(ineq.m()) + ", point has m=" + std::to_string(m));
  }
}
}  // namespace detail

inline double eval_slack_float(const LinearInequality& ineq, const EntropyVector& v) {
  detail::check_same_m(ineq, v.m());
  double sum = 0.0;
  for (std::size_t i = 0; i < ineq.coeffs().size(); ++i) {
    if (ineq.coeffs()[i] != 0) {
      sum += to_double(ineq.coeffs()[i]) * v.value(SubsetIndex(static_cast<std::uint32_t>(i + 1)));
    }
  }
  return sum;
}

inline ExactLogLin eval_slack_exact(const LinearInequality& ineq, const EntropyVector& v) {
  detail::check_same_m(ineq, v.m());
  ExactLogLin sum;
  const auto& values = v.exacts();
  for (std::size_t i = 0; i < ineq.coeffs().size(); ++i) {
    if (ineq.coeffs()[i] != 0) sum += values[i] * ineq.coeffs()[i];
  }
  return sum.normalized();
}

/// sum_T c_T v[T]; negative means v violates the inequality.
inline SlackValue eval_slack(const LinearInequality& ineq, const EntropyVector& v) {
  if (v.mode() == EntropyMode::exact) return eval_slack_exact(ineq, v);
  return eval_slack_float(ineq, v);
}

inline Rational eval_slack(const LinearInequality& ineq, const PolymatroidPoint& p) {
  detail::check_same_m(ineq, p.m);
  if (p.values.size() != subset_count(p.m)) throw Error("dimension-mismatch", "point has wrong length");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.values.size(); ++i) sum += ineq.coeffs()[i] * p.values[i];
  return sum;
}

}  // namespace infodim
