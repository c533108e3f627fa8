#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/inequality.hpp"
#include "infodim/loglin.hpp"
#include "infodim/point_set.hpp"

namespace infodim {

/// Finite set of points in {0..N-1}^m; cardinalities play the role of volumes.
class FiniteBody {
 public:
  FiniteBody(int m, int base, std::vector<Tuple> points) : m_(m), base_(base), points_(std::move(points)) {
    check_variable_count(m);
    if (base < 1) throw Error("invalid-body", "base must be positive");
    if (points_.empty()) throw Error("invalid-body", "empty body");
    for (const auto& p : points_) {
      if (p.size() != static_cast<std::size_t>(m)) {
        throw Error("invalid-body", "point " + to_string(p) + " does not have " + std::to_string(m) + " coordinates");
      }
      for (int x : p) {
        if (x < 0 || x >= base) throw Error("invalid-body", "coordinate " + std::to_string(x) + " outside base");
      }
    }
    canonicalize(points_);
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int base() const noexcept { return base_; }
  [[nodiscard]] const std::vector<Tuple>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] std::size_t projection_size(SubsetIndex s) const { return infodim::projection_size(points_, s); }

 private:
  int m_;
  int base_;
  std::vector<Tuple> points_;
};

namespace detail {
inline void require_three(const FiniteBody& s) {
  if (s.m() != 3) throw Error("dimension-mismatch", "body must be three-dimensional");
}
inline constexpr std::uint32_t k1 = 0b001, k12 = 0b011, k13 = 0b101, k23 = 0b110, k123 = 0b111;
}  // namespace detail

/// log2 #S12 + log2 #S13 + log2 #S23 - 2 log2 #S (nonnegative by Loomis-Whitney).
inline double loomis_whitney_slack(const FiniteBody& s) {
  detail::require_three(s);
  auto lg = [&](std::uint32_t mask) { return std::log2(static_cast<double>(s.projection_size(SubsetIndex(mask)))); };
  return lg(detail::k12) + lg(detail::k13) + lg(detail::k23) - 2.0 * std::log2(static_cast<double>(s.size()));
}

/// Cube {0..k-1}^3 together with the bar {0..k^1.5-1} x {0} x {0}, in base k^1.5.
inline FiniteBody cube_bar_instance(int k) {
  if (k < 4) throw Error("invalid-argument", "side length must be at least 4");
  const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  if (root * root != k) throw Error("invalid-argument", std::to_string(k) + " is not a perfect square");
  const int bar = k * root;
  std::vector<Tuple> pts;
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      for (int z = 0; z < k; ++z) pts.push_back({x, y, z});
    }
  }
  for (int x = 0; x < bar; ++x) pts.push_back({x, 0, 0});
  return {3, bar, std::move(pts)};
}

/// The two sides of  log #S1 + log #S <= log #S12 + log #S13, compared exactly.
struct UnsplitComparison {
  std::size_t proj1 = 0, volume = 0, proj12 = 0, proj13 = 0;
  BigInt lhs_product;  // #S1 * #S
  BigInt rhs_product;  // #S12 * #S13
  double lhs_bits = 0.0;
  double rhs_bits = 0.0;
  Sign sign = Sign::zero;  // sign of lhs - rhs

  [[nodiscard]] bool holds() const { return sign != Sign::positive; }
};

inline UnsplitComparison check_unsplit_inequality(const FiniteBody& s) {
  detail::require_three(s);
  UnsplitComparison out;
  out.proj1 = s.projection_size(SubsetIndex(detail::k1));
  out.volume = s.size();
  out.proj12 = s.projection_size(SubsetIndex(detail::k12));
  out.proj13 = s.projection_size(SubsetIndex(detail::k13));
  out.lhs_product = BigInt(out.proj1) * out.volume;
  out.rhs_product = BigInt(out.proj12) * out.proj13;
  out.lhs_bits = std::log2(static_cast<double>(out.proj1)) + std::log2(static_cast<double>(out.volume));
  out.rhs_bits = std::log2(static_cast<double>(out.proj12)) + std::log2(static_cast<double>(out.proj13));
  out.sign = out.lhs_product > out.rhs_product ? Sign::positive
             : out.lhs_product < out.rhs_product ? Sign::negative
                                                  : Sign::zero;
  return out;
}

// ---------------------------------------------------------------------------
// Splitting search

/// Budget a_I in bits: a float, or an exact log-linear value.
using SplitLevel = std::variant<double, ExactLogLin>;

inline constexpr double kSplitTolerance = 1e-9;

struct SplitPart {
  SubsetIndex subset;
  SplitLevel level;
};

/// Parts indexed by the left family of the target inequality.
struct SplitSpec {
  std::vector<SplitPart> parts;
};

/// assignment[i] is the part index of body point i.
struct SplitResult {
  std::vector<std::size_t> assignment;
};

/// Pairs the left family of `ineq` with the given levels, in family order.
inline SplitSpec make_split_spec(const LinearInequality& ineq, const std::vector<SplitLevel>& levels) {
  const auto left = ineq.left_family();
  if (left.size() != levels.size()) {
    throw Error("invalid-spec", "inequality has " + std::to_string(left.size()) + " left-side terms, got " +
                                    std::to_string(levels.size()) + " levels");
  }
  SplitSpec spec;
  for (std::size_t i = 0; i < left.size(); ++i) spec.parts.push_back({left[i].subset, levels[i]});
  return spec;
}

/// Whether log2(count) <= level (float levels get the 1e-9 tolerance;
/// count 0 means an empty part and always fits).
inline bool within_level(std::size_t count, const SplitLevel& level) {
  if (count == 0) return true;
  if (const auto* bits = std::get_if<double>(&level)) {
    return std::log2(static_cast<double>(count)) <= *bits + kSplitTolerance;
  }
  return loglin_sign(std::get<ExactLogLin>(level) - ExactLogLin::log2_of(count)) != Sign::negative;
}

namespace detail {

inline void check_spec(const FiniteBody& s, const SplitSpec& spec) {
  if (spec.parts.empty()) throw Error("invalid-spec", "no parts");
  for (const auto& part : spec.parts) {
    if (!part.subset.fits(s.m())) throw Error("invalid-spec", to_string(part.subset) + " exceeds body dimension");
  }
}

/// Largest projection count allowed in each part (at most #S).
inline std::vector<std::size_t> part_caps(const FiniteBody& s, const SplitSpec& spec) {
  std::vector<std::size_t> caps;
  for (const auto& part : spec.parts) {
    std::size_t cap = 0;
    while (cap < s.size() && within_level(cap + 1, part.level)) ++cap;
    caps.push_back(cap);
  }
  return caps;
}

/// Projection multiset of one part, maintained incrementally.
class PartState {
 public:
  explicit PartState(SubsetIndex subset) : subset_(subset) {}
  [[nodiscard]] bool would_grow(const Tuple& p) const { return !counts_.contains(project_tuple(p, subset_)); }
  [[nodiscard]] std::size_t distinct() const { return counts_.size(); }
  void add(const Tuple& p) { ++counts_[project_tuple(p, subset_)]; }
  void remove(const Tuple& p) {
    auto it = counts_.find(project_tuple(p, subset_));
    if (--it->second == 0) counts_.erase(it);
  }

 private:
  SubsetIndex subset_;
  std::map<Tuple, std::size_t> counts_;
};

}  // namespace detail

/// Independent check of a split by direct projection counting.
inline bool verify_split(const FiniteBody& s, const SplitSpec& spec, const SplitResult& result) {
  if (result.assignment.size() != s.size()) return false;
  std::vector<std::set<Tuple>> images(spec.parts.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t part = result.assignment[i];
    if (part >= spec.parts.size()) return false;
    images[part].insert(project_tuple(s.points()[i], spec.parts[part].subset));
  }
  for (std::size_t k = 0; k < spec.parts.size(); ++k) {
    if (!within_level(images[k].size(), spec.parts[k].level)) return false;
  }
  return true;
}

inline constexpr std::uint64_t kMaxExhaustiveAssignments = 10'000'000;

/// First assignment, in lexicographic order (point 0 most significant),
/// with log2 #((S^I)_I) <= a_I for every part. Depth-first search with
/// pruning: projections only grow as points are added, so a part that is
/// over budget stays over budget.
inline std::optional<SplitResult> find_split_exhaustive(const FiniteBody& s, const SplitSpec& spec,
                                                        std::uint64_t max_assignments = kMaxExhaustiveAssignments) {
  detail::check_spec(s, spec);
  const std::size_t parts = spec.parts.size();
  long double space = 1;
  for (std::size_t i = 0; i < s.size(); ++i) space *= static_cast<long double>(parts);
  if (space > static_cast<long double>(max_assignments)) {
    throw Error("search-too-large", std::to_string(parts) + "^" + std::to_string(s.size()) + " assignments exceed " +
                                        std::to_string(max_assignments));
  }
  const auto caps = detail::part_caps(s, spec);
  std::vector<detail::PartState> state;
  for (const auto& part : spec.parts) state.emplace_back(part.subset);
  SplitResult result{std::vector<std::size_t>(s.size())};

  // iterative DFS over points; choice[i] is the part tried for point i
  std::vector<std::size_t> choice(s.size(), 0);
  std::size_t i = 0;
  while (true) {
    if (i == s.size()) {
      result.assignment = choice;
      if (!verify_split(s, spec, result)) throw Error("internal", "exhaustive split failed re-verification");
      return result;
    }
    bool placed = false;
    while (choice[i] < parts) {
      const std::size_t k = choice[i];
      const Tuple& p = s.points()[i];
      if (!state[k].would_grow(p) || state[k].distinct() + 1 <= caps[k]) {
        state[k].add(p);
        placed = true;
        break;
      }
      ++choice[i];
    }
    if (placed) {
      ++i;
      if (i < s.size()) choice[i] = 0;
      continue;
    }
    // backtrack
    if (i == 0) return std::nullopt;
    --i;
    state[choice[i]].remove(s.points()[i]);
    ++choice[i];
  }
}

/// Greedy split in point order: each point goes to the part it strains
/// least, i.e. no new projection value if possible, otherwise the part
/// with the most remaining room. Sound, but a miss proves nothing.
inline std::optional<SplitResult> find_split_greedy(const FiniteBody& s, const SplitSpec& spec) {
  detail::check_spec(s, spec);
  const auto caps = detail::part_caps(s, spec);
  std::vector<detail::PartState> state;
  for (const auto& part : spec.parts) state.emplace_back(part.subset);
  SplitResult result{std::vector<std::size_t>(s.size())};

  for (std::size_t i = 0; i < s.size(); ++i) {
    const Tuple& p = s.points()[i];
    std::optional<std::size_t> best;
    auto room = [&](std::size_t k) { return static_cast<long>(caps[k]) - static_cast<long>(state[k].distinct()); };
    for (std::size_t k = 0; k < spec.parts.size(); ++k) {
      const bool grows = state[k].would_grow(p);
      if (grows && room(k) <= 0) continue;
      if (!best) {
        best = k;
        continue;
      }
      const bool best_grows = state[*best].would_grow(p);
      if (best_grows && !grows) {
        best = k;
      } else if (best_grows == grows && grows && room(k) > room(*best)) {
        best = k;
      }
    }
    if (!best) return std::nullopt;
    state[*best].add(p);
    result.assignment[i] = *best;
  }
  if (!verify_split(s, spec, result)) return std::nullopt;
  return result;
}

}  // namespace infodim
