#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/group.hpp"
#include "infodim/group_witness.hpp"
#include "infodim/inequality.hpp"
#include "infodim/loglin.hpp"
#include "infodim/point_set.hpp"

namespace infodim {

/// Digit set A in {0..N-1}^m. It stands for the Cantor-type set C_A of
/// points in [0,1]^m whose base-N digit columns all lie in A.
class CantorWitness {
 public:
  CantorWitness(int m, int base, std::vector<Tuple> points) : m_(m), base_(base), points_(std::move(points)) {
    check_variable_count(m);
    if (base < 2) throw Error("invalid-witness", "base must be at least 2");
    if (points_.empty()) throw Error("invalid-witness", "empty digit set");
    for (const auto& p : points_) {
      if (p.size() != static_cast<std::size_t>(m)) {
        throw Error("invalid-witness", "point " + to_string(p) + " does not have " + std::to_string(m) + " digits");
      }
      for (int d : p) {
        if (d < 0 || d >= base) throw Error("invalid-witness", "digit " + std::to_string(d) + " outside base");
      }
    }
    canonicalize(points_);
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int base() const noexcept { return base_; }
  [[nodiscard]] const std::vector<Tuple>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

 private:
  int m_;
  int base_;
  std::vector<Tuple> points_;
};

/// (C_A)_I is C_{A_I}: project the digit set.
inline CantorWitness project(const CantorWitness& w, SubsetIndex subset) {
  if (!subset.fits(w.m())) throw Error("invalid-subset", to_string(subset) + " exceeds m=" + std::to_string(w.m()));
  std::vector<Tuple> pts;
  pts.reserve(w.size());
  for (const auto& p : w.points()) pts.push_back(project_tuple(p, subset));
  return {subset.size(), w.base(), std::move(pts)};
}

/// log #A / log N, the common Hausdorff and packing dimension of C_A.
struct DimValue {
  std::uint64_t cardinality = 1;
  int base = 2;

  [[nodiscard]] double to_double() const {
    return std::log2(static_cast<double>(cardinality)) / std::log2(static_cast<double>(base));
  }
  /// dim * log2 N as an exact log-linear value.
  [[nodiscard]] ExactLogLin scaled() const { return ExactLogLin::log2_of(cardinality); }
  [[nodiscard]] std::string to_string() const {
    return "log2(" + std::to_string(cardinality) + ")/log2(" + std::to_string(base) + ")";
  }
};

inline DimValue dim_value(const CantorWitness& w) { return {w.size(), w.base()}; }

/// Sign of sum_k q_k dim_k - r. All dimensions must share one base.
inline Sign dim_combination_sign(const std::vector<std::pair<Rational, DimValue>>& terms, const Rational& r = 0) {
  std::optional<int> base;
  ExactLogLin acc;
  for (const auto& [q, d] : terms) {
    if (base && *base != d.base) throw Error("base-mismatch", "dimensions use different bases");
    base = d.base;
    acc += d.scaled() * q;
  }
  if (r != 0) {
    if (!base) return r > 0 ? Sign::negative : Sign::positive;
    acc -= ExactLogLin::log2_of(*base, r);
  }
  return loglin_sign(acc);
}

/// Sign of a - b for two dimensions in a common base.
inline Sign compare(const DimValue& a, const DimValue& b) { return dim_combination_sign({{1, a}, {-1, b}}); }

/// Sign of d - r for a rational r.
inline Sign compare(const DimValue& d, const Rational& r) { return dim_combination_sign({{1, d}}, r); }

struct FiberCheck {
  bool uniform = false;
  std::size_t fiber_size = 0;  // #A / #A_I when uniform
  Tuple offending;             // first I-value whose fiber is not #A / #A_I, otherwise empty
};

/// Whether every attained I-value has the same number of preimages in A.
inline FiberCheck uniform_fiber(const CantorWitness& w, SubsetIndex subset) {
  if (!subset.fits(w.m()) || subset == SubsetIndex::full(w.m())) {
    throw Error("invalid-subset", "fiber check needs a proper nonempty subset, got " + to_string(subset));
  }
  const auto fibers = fiber_counts(w.points(), subset);
  // uniform means every fiber holds exactly #A / #A_I points
  for (const auto& [image, count] : fibers) {
    if (count * fibers.size() != w.size()) return {false, 0, image};
  }
  return {true, w.size() / fibers.size(), {}};
}

struct LemmaCheck {
  bool holds = false;
  std::size_t subset_size = 0;      // #B
  std::size_t projection_size = 0;  // #B_I
  std::size_t fiber_size = 0;       // f
};

/// Counting core of the projection lemma: for B inside A and a uniform
/// projection with fiber size f, #B <= #B_I * f.
inline LemmaCheck lemma_fiber_bound(const CantorWitness& w, const std::vector<Tuple>& b, SubsetIndex subset) {
  const FiberCheck fiber = uniform_fiber(w, subset);
  if (!fiber.uniform) throw Error("non-uniform-fibers", "projection onto " + to_string(subset) + " is not uniform");
  std::vector<Tuple> sub = b;
  canonicalize(sub);
  for (const auto& p : sub) {
    if (!std::binary_search(w.points().begin(), w.points().end(), p)) {
      throw Error("not-a-subset", "point " + to_string(p) + " is not in A");
    }
  }
  const std::size_t proj = projection_size(sub, subset);
  return {sub.size() <= proj * fiber.fiber_size, sub.size(), proj, fiber.fiber_size};
}

// ---------------------------------------------------------------------------
// Dimension counterexample pipeline

/// a_I = max(0, dim (C_A)_I - eps) for one left-family subset I.
struct DimensionLevel {
  SubsetIndex subset;
  Rational lambda;
  DimValue dim;
  Rational epsilon;
  bool clamped = false;  // dim - eps < 0, so a_I = 0

  /// a_I * log2 N, exactly.
  [[nodiscard]] ExactLogLin scaled() const {
    if (clamped) return {};
    return dim.scaled() - ExactLogLin::log2_of(dim.base, epsilon);
  }
  [[nodiscard]] double to_double() const { return clamped ? 0.0 : dim.to_double() - infodim::to_double(epsilon); }
  [[nodiscard]] std::string to_string() const {
    if (clamped) return "0";
    return dim.to_string() + " - " + infodim::to_string(epsilon);
  }
};

struct DimensionCounterexample {
  CantorWitness witness;
  LinearInequality inequality;
  Rational epsilon;
  std::vector<DimValue> projection_dims;  // dim (C_A)_I for every subset slot
  std::vector<DimensionLevel> levels;     // one per left-family subset
  ExactLogLin entropy_slack;              // sum c_T H(g_T), negative
  ExactLogLin level_margin;               // (sum lambda a_I - sum mu dim_J) * log2 N, positive
};

namespace detail {

inline ExactLogLin mu_side(const LinearInequality& ineq, const std::vector<DimValue>& dims) {
  ExactLogLin acc;
  for (const auto& [subset, mu] : ineq.right_family()) acc += dims[subset.slot()].scaled() * mu;
  return acc;
}

}  // namespace detail

/// Re-checks every invariant of a counterexample with exact sign tests.
inline void verify_counterexample(const DimensionCounterexample& cx) {
  const int base = cx.witness.base();
  if (cx.epsilon <= 0) throw Error("counterexample-invalid", "epsilon must be positive");
  ExactLogLin lhs;
  for (const auto& level : cx.levels) {
    if (level.dim.base != base) throw Error("base-mismatch", "level uses a different base");
    const Sign raw = loglin_sign(level.dim.scaled() - ExactLogLin::log2_of(base, level.epsilon));
    if ((raw == Sign::negative) != level.clamped) {
      throw Error("counterexample-invalid", "clamp flag wrong at " + to_string(level.subset));
    }
    if (loglin_sign(level.scaled()) == Sign::negative) {
      throw Error("counterexample-invalid", "negative level at " + to_string(level.subset));
    }
    if (compare(level.dim, Rational(0)) == Sign::positive &&
        loglin_sign(level.dim.scaled() - level.scaled()) != Sign::positive) {
      throw Error("counterexample-invalid", "level not below dimension at " + to_string(level.subset));
    }
    lhs += level.scaled() * level.lambda;
  }
  const ExactLogLin margin = lhs - detail::mu_side(cx.inequality, cx.projection_dims);
  if (loglin_sign(margin) != Sign::positive) {
    throw Error("counterexample-invalid", "sum lambda a_I does not exceed sum mu dim_J");
  }
  for (SubsetIndex s : subsets(cx.witness.m())) {
    if (cx.projection_dims[s.slot()].cardinality != projection_size(cx.witness.points(), s)) {
      throw Error("counterexample-invalid", "projection cardinality mismatch at " + to_string(s));
    }
  }
}

/// Turns a violating group tuple into a Cantor-set statement: A is the coset
/// witness set in base N = max_i #G/#H_i, and the levels a_I sit just below
/// the projection dimensions, with eps the largest 2^-k (k = 1..64) that
/// keeps sum lambda_I a_I > sum mu_J dim (C_A)_J.
inline DimensionCounterexample build_counterexample(const LinearInequality& ineq, const FiniteGroup& g,
                                                    std::span<const Subgroup> subgroups) {
  if (static_cast<int>(subgroups.size()) != ineq.m()) {
    throw Error("dimension-mismatch", "inequality has m=" + std::to_string(ineq.m()) + ", got " +
                                          std::to_string(subgroups.size()) + " subgroups");
  }
  const GroupEntropyPoint point = coset_entropy_point(g, subgroups);
  ExactLogLin slack = eval_slack_exact(ineq, point.vector);
  if (loglin_sign(slack) != Sign::negative) {
    throw Error("not-violated", "coset entropy point satisfies the inequality (slack " + slack.to_string() + ")");
  }

  std::size_t base = 2;
  for (const auto& h : subgroups) base = std::max(base, static_cast<std::size_t>(g.order()) / h.size());
  const SupportSet support = witness_set(g, subgroups);
  CantorWitness witness(ineq.m(), static_cast<int>(base), support.points);

  std::vector<DimValue> dims;
  for (SubsetIndex s : subsets(ineq.m())) {
    const std::size_t card = projection_size(witness.points(), s);
    if (card * point.intersection_orders[s.slot()] != static_cast<std::size_t>(g.order())) {
      throw Error("internal", "#A_I differs from #G/#H_I at " + to_string(s));
    }
    dims.push_back({card, static_cast<int>(base)});
  }

  const auto left = ineq.left_family();
  Rational lambda_total = 0;
  ExactLogLin lambda_dims;
  for (const auto& [subset, lambda] : left) {
    lambda_total += lambda;
    lambda_dims += dims[subset.slot()].scaled() * lambda;
  }
  bool all_zero = true;
  for (const auto& [subset, lambda] : left) all_zero = all_zero && dims[subset.slot()].cardinality == 1;
  if (left.empty() || all_zero) throw Error("no-epsilon", "every left-side dimension is zero");

  const ExactLogLin mu_dims = detail::mu_side(ineq, dims);
  std::optional<Rational> epsilon;
  for (int k = 1; k <= 64; ++k) {
    const Rational eps(BigInt(1), BigInt(1) << k);
    const ExactLogLin margin = lambda_dims - ExactLogLin::log2_of(base, eps * lambda_total) - mu_dims;
    if (loglin_sign(margin) == Sign::positive) {
      epsilon = eps;
      break;
    }
  }
  if (!epsilon) throw Error("no-epsilon", "no eps = 2^-k with k <= 64 keeps the strict inequality");

  std::vector<DimensionLevel> levels;
  ExactLogLin lhs;
  for (const auto& [subset, lambda] : left) {
    DimensionLevel level{subset, lambda, dims[subset.slot()], *epsilon, false};
    level.clamped = loglin_sign(level.dim.scaled() - ExactLogLin::log2_of(base, *epsilon)) == Sign::negative;
    lhs += level.scaled() * lambda;
    levels.push_back(level);
  }

  DimensionCounterexample cx{std::move(witness), ineq, *epsilon, std::move(dims), std::move(levels),
                             std::move(slack), {}};
  cx.level_margin = (lhs - mu_dims).normalized();
  verify_counterexample(cx);
  return cx;
}

}  // namespace infodim
