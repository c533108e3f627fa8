#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "infodim/subset.hpp"

namespace infodim {

/// m-tuple of small nonnegative symbols (distribution points, digits,
/// coset indices).
using Tuple = std::vector<int>;

inline Tuple project_tuple(const Tuple& t, SubsetIndex s) {
  Tuple out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int p : s.positions()) out.push_back(t.at(static_cast<std::size_t>(p - 1)));
  return out;
}

/// Preimage counts of the coordinate projection onto `s`.
inline std::map<Tuple, std::size_t> fiber_counts(const std::vector<Tuple>& points, SubsetIndex s) {
  std::map<Tuple, std::size_t> counts;
  for (const auto& p : points) ++counts[project_tuple(p, s)];
  return counts;
}

inline std::size_t projection_size(const std::vector<Tuple>& points, SubsetIndex s) {
  return fiber_counts(points, s).size();
}

inline std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

/// Sorts and deduplicates in place.
inline void canonicalize(std::vector<Tuple>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

}  // namespace infodim
