#pragma once

// Independent helpers for the test suite. Nothing here calls into the
// library's computational routines; they exist to cross-check them.

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "infodim/distributions.hpp"

namespace infodim::testing {

/// Random distribution on {0..alphabet-1}^m with `atoms` distinct points and
/// integer weights, so probabilities are exact rationals.
inline JointDistribution random_distribution(std::mt19937_64& rng, int m, int alphabet, int atoms) {
  std::uniform_int_distribution<int> symbol(0, alphabet - 1);
  std::uniform_int_distribution<int> weight(1, 9);
  std::set<Tuple> points;
  const double space = std::pow(alphabet, m);
  const int wanted = std::min<int>(atoms, static_cast<int>(space));
  while (static_cast<int>(points.size()) < wanted) {
    Tuple p(static_cast<std::size_t>(m));
    for (int& x : p) x = symbol(rng);
    points.insert(p);
  }
  std::vector<int> weights;
  int total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    weights.push_back(weight(rng));
    total += weights.back();
  }
  JointDistribution d{m, {}};
  std::size_t i = 0;
  for (const auto& p : points) d.atoms.push_back({p, Rational(weights[i++], total)});
  return d;
}

/// Shannon entropy of the marginal on `mask` (bit i-1 = coordinate i), by
/// direct summation of -p log2 p over the marginal table.
inline double brute_entropy(const JointDistribution& d, std::uint32_t mask) {
  std::map<std::vector<int>, double> marginal;
  for (const auto& a : d.atoms) {
    std::vector<int> key;
    for (int i = 0; i < d.m; ++i) {
      if (mask & (1u << i)) key.push_back(a.point[static_cast<std::size_t>(i)]);
    }
    marginal[key] += a.prob.convert_to<double>();
  }
  double h = 0.0;
  for (const auto& [key, p] : marginal) h -= p * std::log2(p);
  return h;
}

}  // namespace infodim::testing
