#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/inequality.hpp"
#include "infodim/simplex.hpp"
#include "infodim/subset.hpp"

namespace infodim {

inline constexpr int kMinElementalVariables = 2;
inline constexpr int kMaxElementalVariables = 6;

/// Elemental Shannon inequalities on m variables:
///   H(N) - H(N \ {i}) >= 0                      for each i,
///   H(iK) + H(jK) - H(ijK) - H(K) >= 0          for i < j, K within N \ {i,j}.
struct ElementalSet {
  int m = 0;
  std::vector<LinearInequality> rows;
  std::vector<std::string> labels;  // "H(1|2,3)", "I(1;2|3)", ...
};

inline std::size_t elemental_count(int m) {
  const std::size_t pairs = static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
  return static_cast<std::size_t>(m) + pairs * (std::size_t{1} << (m - 2));
}

inline ElementalSet elemental_inequalities(int m) {
  check_variable_count(m, kMinElementalVariables, kMaxElementalVariables);
  const std::uint32_t all = (1u << m) - 1;
  ElementalSet out{m, {}, {}};
  out.rows.reserve(elemental_count(m));

  for (int i = 1; i <= m; ++i) {
    const std::uint32_t bit = 1u << (i - 1);
    out.rows.push_back(LinearInequality::from_terms(m, {{all, 1}, {all & ~bit, -1}}));
    out.labels.push_back("H(" + std::to_string(i) + "|" + to_string(SubsetIndex(all & ~bit)).substr(1));
    out.labels.back().back() = ')';
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const std::uint32_t bi = 1u << (i - 1);
      const std::uint32_t bj = 1u << (j - 1);
      const std::uint32_t rest = all & ~(bi | bj);
      // K ranges over subsets of `rest` in ascending mask order
      for (std::uint32_t k = 0; k <= rest; ++k) {
        if ((k & ~rest) != 0) continue;
        std::vector<std::pair<std::uint32_t, Rational>> terms{{bi | k, 1}, {bj | k, 1}, {bi | bj | k, -1}};
        if (k != 0) terms.emplace_back(k, -1);
        out.rows.push_back(LinearInequality::from_terms(m, terms));
        std::string label = "I(" + std::to_string(i) + ";" + std::to_string(j);
        if (k != 0) {
          const std::string ks = to_string(SubsetIndex(k));
          label += "|" + ks.substr(1, ks.size() - 2);
        }
        out.labels.push_back(label + ")");
      }
    }
  }
  return out;
}

/// Nonnegative weights y_r with sum_r y_r * row_r == target, coefficient-wise.
struct ShannonCertificate {
  std::map<std::size_t, Rational> weights;  // row index -> weight (nonzero entries only)
};

/// Polymatroid point satisfying every elemental row but violating the target.
struct FarkasWitness {
  PolymatroidPoint point;
};

using ShannonVerdict = std::variant<ShannonCertificate, FarkasWitness>;

inline void verify_certificate(const LinearInequality& ineq, const ShannonCertificate& cert) {
  const ElementalSet elemental = elemental_inequalities(ineq.m());
  std::vector<Rational> sum(ineq.coeffs().size());
  for (const auto& [row, weight] : cert.weights) {
    if (row >= elemental.rows.size()) {
      throw Error("certificate-invalid", "row index " + std::to_string(row) + " out of range");
    }
    if (weight < 0) {
      throw Error("certificate-invalid", "negative weight on row " + elemental.labels[row]);
    }
    const auto& coeffs = elemental.rows[row].coeffs();
    for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += weight * coeffs[t];
  }
  for (std::size_t t = 0; t < sum.size(); ++t) {
    if (sum[t] != ineq.coeffs()[t]) {
      throw Error("certificate-mismatch",
                  "at subset " + to_string(SubsetIndex(static_cast<std::uint32_t>(t + 1))) + ": combination gives " +
                      to_string(sum[t]) + ", target has " + to_string(ineq.coeffs()[t]));
    }
  }
}

inline void verify_farkas(const LinearInequality& ineq, const FarkasWitness& w) {
  if (w.point.m != ineq.m() || w.point.values.size() != ineq.coeffs().size()) {
    throw Error("dimension-mismatch", "witness point does not match the inequality");
  }
  const ElementalSet elemental = elemental_inequalities(ineq.m());
  for (std::size_t r = 0; r < elemental.rows.size(); ++r) {
    const Rational slack = eval_slack(elemental.rows[r], w.point);
    if (slack < 0) {
      throw Error("farkas-invalid", "elemental row " + elemental.labels[r] + " has slack " + to_string(slack));
    }
  }
  const Rational target = eval_slack(ineq, w.point);
  if (target >= 0) {
    throw Error("farkas-invalid", "target slack is " + to_string(target) + ", not negative");
  }
}

namespace detail {

/// Scales a nonzero rational vector by a positive factor to coprime integers.
inline std::vector<Rational> primitive_integer_vector(const std::vector<Rational>& v) {
  BigInt den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  BigInt g = 0;
  for (const auto& x : v) {
    const BigInt n = boost::multiprecision::numerator(Rational(x * den));
    g = boost::multiprecision::gcd(g, n < 0 ? BigInt(-n) : n);
  }
  if (g == 0) return v;
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(Rational(x * den) / g);
  return out;
}

}  // namespace detail

/// Decides whether `ineq` is a nonnegative combination of elemental Shannon
/// inequalities: solves E^T y = c, y >= 0 exactly. Either branch is verified
/// before it is returned.
inline ShannonVerdict is_shannon_type(const LinearInequality& ineq) {
  const ElementalSet elemental = elemental_inequalities(ineq.m());
  const std::size_t n = ineq.coeffs().size();
  const std::size_t r = elemental.rows.size();
  RationalMatrix a(n, std::vector<Rational>(r));
  for (std::size_t row = 0; row < r; ++row) {
    const auto& coeffs = elemental.rows[row].coeffs();
    for (std::size_t t = 0; t < n; ++t) a[t][row] = coeffs[t];
  }
  const FeasibilityResult lp = solve_feasibility(a, ineq.coeffs());

  if (lp.feasible) {
    ShannonCertificate cert;
    for (std::size_t row = 0; row < r; ++row) {
      if (lp.solution[row] != 0) cert.weights.emplace(row, lp.solution[row]);
    }
    verify_certificate(ineq, cert);
    return cert;
  }
  FarkasWitness witness{{ineq.m(), detail::primitive_integer_vector(lp.farkas)}};
  verify_farkas(ineq, witness);
  return witness;
}

/// 2 I(z;w) <= I(x;y) + I(x;z,w) + 3 I(z;w|x) + I(z;w|y) over (x,y,z,w) = (1,2,3,4).
inline constexpr const char* kZhangYeungText =
    "2 I(z;w) <= I(x;y) + I(x;z,w) + 3 I(z;w|x) + I(z;w|y)";

}  // namespace infodim
