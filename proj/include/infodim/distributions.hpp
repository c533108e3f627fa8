#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "infodim/entropy_vector.hpp"
#include "infodim/error.hpp"
#include "infodim/loglin.hpp"
#include "infodim/point_set.hpp"
#include "infodim/rational.hpp"

namespace infodim {

struct Atom {
  Tuple point;
  Rational prob;
};

/// Finite joint distribution of m variables with exact rational masses.
struct JointDistribution {
  int m = 0;
  std::vector<Atom> atoms;
};

/// Finite support read as the uniform distribution on its points.
struct SupportSet {
  int m = 0;
  std::vector<Tuple> points;
};

namespace detail {

inline void check_point(const Tuple& p, int m, const char* what) {
  if (p.size() != static_cast<std::size_t>(m)) {
    throw Error(what, "point " + to_string(p) + " does not have " + std::to_string(m) + " coordinates");
  }
  for (int x : p) {
    if (x < 0) throw Error(what, "point " + to_string(p) + " has a negative symbol");
  }
}

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Checks the distribution invariants and returns a copy with atoms sorted by point.
inline JointDistribution validate(JointDistribution d) {
  check_variable_count(d.m);
  if (d.atoms.empty()) throw Error("invalid-distribution", "no atoms");
  Rational total = 0;
  for (const auto& a : d.atoms) {
    detail::check_point(a.point, d.m, "invalid-distribution");
    if (a.prob <= 0) {
      throw Error("invalid-distribution", "nonpositive probability at " + to_string(a.point));
    }
    total += a.prob;
  }
  if (total != 1) throw Error("invalid-distribution", "probabilities sum to " + to_string(total));
  std::sort(d.atoms.begin(), d.atoms.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
  for (std::size_t i = 1; i < d.atoms.size(); ++i) {
    if (d.atoms[i].point == d.atoms[i - 1].point) {
      throw Error("invalid-distribution", "duplicate point " + to_string(d.atoms[i].point));
    }
  }
  return d;
}

/// Entropy in bits of the projection onto the coordinates in `subset`.
inline double marginal_entropy(const JointDistribution& d, SubsetIndex subset) {
  std::map<Tuple, Rational> marginal;
  for (const auto& a : d.atoms) marginal[project_tuple(a.point, subset)] += a.prob;
  detail::CompensatedSum h;
  for (const auto& [point, p] : marginal) {
    // p log2(1/p) with log2(1/p) = log2(den) - log2(num)
    const double log_inv = log2_big(boost::multiprecision::denominator(p)) -
                           log2_big(boost::multiprecision::numerator(p));
    h.add(to_double(p) * log_inv);
  }
  return h.value();
}

inline EntropyVector entropy_vector_float(const JointDistribution& d) {
  const JointDistribution valid = validate(d);
  std::vector<double> values;
  values.reserve(subset_count(d.m));
  for (SubsetIndex s : subsets(d.m)) values.push_back(marginal_entropy(valid, s));
  return EntropyVector::from_floats(d.m, std::move(values));
}

inline SupportSet validate(SupportSet s) {
  check_variable_count(s.m);
  if (s.points.empty()) throw Error("invalid-support", "empty support");
  for (const auto& p : s.points) detail::check_point(p, s.m, "invalid-support");
  canonicalize(s.points);
  return s;
}

inline JointDistribution uniform_distribution(const SupportSet& s) {
  const SupportSet valid = validate(s);
  JointDistribution d{valid.m, {}};
  const Rational p(1, valid.points.size());
  for (const auto& pt : valid.points) d.atoms.push_back({pt, p});
  return d;
}

/// Exact entropies of the uniform distribution on `s`: H(I) = log2 #s_I.
/// Only valid when every projection has uniform fibers; otherwise throws
/// "non-uniform-fibers" naming the first offending subset.
inline EntropyVector exact_entropy_vector(const SupportSet& s) {
  const SupportSet valid = validate(s);
  std::vector<ExactLogLin> values;
  values.reserve(subset_count(valid.m));
  for (SubsetIndex subset : subsets(valid.m)) {
    const auto fibers = fiber_counts(valid.points, subset);
    const std::size_t first = fibers.begin()->second;
    for (const auto& [image, count] : fibers) {
      if (count != first) throw Error("non-uniform-fibers", to_string(subset));
    }
    values.push_back(ExactLogLin::log2_of(fibers.size()));
  }
  return EntropyVector::from_exact(valid.m, std::move(values));
}

}  // namespace infodim
