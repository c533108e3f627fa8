#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/loglin.hpp"
#include "infodim/rational.hpp"

namespace infodim {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Outcome of the feasibility problem  A x = b, x >= 0.
/// Feasible: `solution` holds x. Infeasible: `farkas` holds y with
/// y^T A >= 0 componentwise and y^T b < 0.
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> solution;
  std::vector<Rational> farkas;
};

/// Phase-one dense tableau simplex over exact rationals with Bland's rule.
///
/// Rows are sign-normalized so that b >= 0 and an artificial identity basis
/// is appended. The artificial columns are kept in the tableau for the whole
/// run, so at the optimum their reduced costs give the dual multipliers
/// u_k = 1 - d_k, from which the Farkas ray is read off.
class PhaseOneSimplex {
 public:
  PhaseOneSimplex(const RationalMatrix& a, const std::vector<Rational>& b)
      : rows_(a.size()), cols_(a.empty() ? 0 : a.front().size()), sign_(rows_, 1) {
    if (b.size() != rows_) throw Error("dimension-mismatch", "rhs length differs from row count");
    width_ = cols_ + rows_ + 1;
    tab_.assign(rows_, std::vector<Rational>(width_));
    cost_.assign(width_, Rational(0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != cols_) throw Error("dimension-mismatch", "ragged constraint matrix");
      sign_[i] = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = a[i][j] * sign_[i];
      tab_[i][cols_ + i] = 1;
      tab_[i][width_ - 1] = b[i] * sign_[i];
      basis_[i] = cols_ + i;
    }
    // phase-one costs: 1 on artificials, reduced to zero on the initial basis
    for (std::size_t j = 0; j < width_; ++j) {
      if (j >= cols_ && j < cols_ + rows_) continue;
      Rational d = 0;
      for (std::size_t i = 0; i < rows_; ++i) d -= tab_[i][j];
      cost_[j] = d;  // last entry is -(objective value)
    }
  }

  FeasibilityResult solve() {
    while (auto entering = choose_entering()) {
      const auto leaving = choose_leaving(*entering);
      // the phase-one objective is bounded below by zero
      if (!leaving) throw Error("internal", "unbounded phase-one simplex");
      pivot(*leaving, *entering);
    }

    FeasibilityResult out;
    const Rational objective = -cost_[width_ - 1];
    if (objective == 0) {
      out.feasible = true;
      out.solution.assign(cols_, Rational(0));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < cols_) out.solution[basis_[i]] = tab_[i][width_ - 1];
      }
      return out;
    }
    out.farkas.resize(rows_);
    for (std::size_t k = 0; k < rows_; ++k) {
      const Rational dual = 1 - cost_[cols_ + k];
      out.farkas[k] = -dual * sign_[k];
    }
    return out;
  }

 private:
  // smallest structural column with negative reduced cost
  std::optional<std::size_t> choose_entering() const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (cost_[j] < 0) return j;
    }
    return std::nullopt;
  }

  // min ratio; ties go to the smallest basic variable index
  std::optional<std::size_t> choose_leaving(std::size_t col) const {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (tab_[i][col] <= 0) continue;
      Rational ratio = tab_[i][width_ - 1] / tab_[i][col];
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = tab_[row][col];
    const auto bits = [](const BigInt& n) { return n == 0 ? std::size_t{0} : boost::multiprecision::msb(abs(n)) + 1; };
    if (bits(boost::multiprecision::numerator(p)) > kMaxIntermediateBits ||
        bits(boost::multiprecision::denominator(p)) > kMaxIntermediateBits) {
      throw Error("size-limit", "simplex pivot entry exceeds the bit-length guard");
    }
    for (auto& x : tab_[row]) {
      if (x != 0) x /= p;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      const Rational f = tab_[i][col];
      for (std::size_t j = 0; j < width_; ++j) {
        if (tab_[row][j] != 0) tab_[i][j] -= f * tab_[row][j];
      }
    }
    if (cost_[col] != 0) {
      const Rational f = cost_[col];
      for (std::size_t j = 0; j < width_; ++j) {
        if (tab_[row][j] != 0) cost_[j] -= f * tab_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_ = 0;
  std::vector<int> sign_;
  RationalMatrix tab_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

inline FeasibilityResult solve_feasibility(const RationalMatrix& a, const std::vector<Rational>& b) {
  return PhaseOneSimplex(a, b).solve();
}

}  // namespace infodim
