#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infodim/distributions.hpp"
#include "infodim/entropy_vector.hpp"
#include "infodim/error.hpp"
#include "infodim/group.hpp"
#include "infodim/inequality.hpp"
#include "infodim/loglin.hpp"

namespace infodim {

/// Entropy point of the coset variables g_i = g H_i for uniform random g:
/// H(g_I) = log2 #G - log2 #H_I with H_I the intersection over I.
struct GroupEntropyPoint {
  int m = 0;
  EntropyVector vector;
  std::vector<std::size_t> intersection_orders;  // #H_I, by subset slot
};

namespace detail {

inline void check_subgroup_tuple(std::span<const Subgroup> subgroups) {
  check_variable_count(static_cast<int>(subgroups.size()));
}

/// #H_I for every nonempty I, computed by intersecting along the lowest bit.
inline std::vector<std::size_t> intersection_orders(const FiniteGroup& g, std::span<const Subgroup> subgroups) {
  const int m = static_cast<int>(subgroups.size());
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<std::size_t> orders(subset_count(m));
  std::vector<std::vector<bool>> sets(subset_count(m) + 1);
  sets[0].assign(n, true);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    std::vector<bool> s = sets[rest];
    std::size_t count = 0;
    for (std::size_t x = 0; x < n; ++x) {
      s[x] = s[x] && subgroups[static_cast<std::size_t>(low)].contains(static_cast<int>(x));
      count += s[x] ? 1 : 0;
    }
    orders[mask - 1] = count;
    sets[mask] = std::move(s);
  }
  return orders;
}

/// Next tuple in lexicographic order (last position fastest); false when exhausted.
inline bool advance_odometer(std::vector<std::size_t>& idx, std::size_t base) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    if (++idx[pos] < base) return true;
    idx[pos] = 0;
  }
  return false;
}

}  // namespace detail

inline GroupEntropyPoint coset_entropy_point(const FiniteGroup& g, std::span<const Subgroup> subgroups) {
  detail::check_subgroup_tuple(subgroups);
  const int m = static_cast<int>(subgroups.size());
  auto orders = detail::intersection_orders(g, subgroups);
  std::vector<ExactLogLin> values;
  values.reserve(orders.size());
  for (std::size_t order : orders) {
    if (static_cast<std::size_t>(g.order()) % order != 0) {
      throw Error("internal", "subgroup order does not divide the group order");
    }
    values.push_back(ExactLogLin::log2_of(static_cast<std::size_t>(g.order()) / order));
  }
  return {m, EntropyVector::from_exact(m, std::move(values)), std::move(orders)};
}

/// Digit of every element's coset g H: cosets are numbered 0,1,... in order
/// of their least element.
inline std::vector<int> coset_labels(const FiniteGroup& g, const Subgroup& h) {
  const int n = g.order();
  std::vector<int> least(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int best = n;
    for (int e : h.elements()) best = std::min(best, g.op(x, e));
    least[x] = best;
  }
  std::vector<int> digit_of_rep(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    // x is the least element of its coset exactly when least[x] == x
    if (least[x] == x) digit_of_rep[x] = next++;
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) labels[x] = digit_of_rep[least[x]];
  return labels;
}

/// A = {(gH_1, ..., gH_m) : g in G}, cosets written as their digits.
inline SupportSet witness_set(const FiniteGroup& g, std::span<const Subgroup> subgroups) {
  detail::check_subgroup_tuple(subgroups);
  const int m = static_cast<int>(subgroups.size());
  std::vector<std::vector<int>> labels;
  labels.reserve(subgroups.size());
  for (const auto& h : subgroups) labels.push_back(coset_labels(g, h));
  SupportSet out{m, {}};
  out.points.reserve(static_cast<std::size_t>(g.order()));
  for (int x = 0; x < g.order(); ++x) {
    Tuple t;
    t.reserve(subgroups.size());
    for (const auto& l : labels) t.push_back(l[x]);
    out.points.push_back(std::move(t));
  }
  canonicalize(out.points);
  return out;
}

struct GroupViolation {
  std::string group_name;
  std::size_t catalog_index = 0;
  std::vector<std::size_t> subgroup_indices;  // into enumerate_subgroups(group)
  std::vector<Subgroup> subgroups;
  ExactLogLin slack;
};

struct SearchOptions {
  /// Per-group cap on scanned m-tuples; groups beyond it are scanned partially.
  std::uint64_t max_tuples_per_group = 5'000'000;
};

struct SearchOutcome {
  std::optional<GroupViolation> violation;
  std::uint64_t tuples_examined = 0;
  bool truncated = false;  // some group hit max_tuples_per_group
};

/// Scans the catalog in order; within a group, subgroup m-tuples (with
/// repetition, indices into enumerate_subgroups) in lexicographic order.
/// Returns the first tuple whose coset entropy point has negative exact
/// slack. An empty result means "none within the catalog", nothing more.
inline SearchOutcome search_violation(const LinearInequality& ineq, std::span<const CatalogEntry> catalog,
                                      const SearchOptions& options = {}) {
  if (catalog.empty()) throw Error("empty-catalog", "no groups to search");
  const int m = ineq.m();
  SearchOutcome outcome;

  std::vector<std::pair<std::size_t, Rational>> active;
  for (std::size_t t = 0; t < ineq.coeffs().size(); ++t) {
    if (ineq.coeffs()[t] != 0) active.emplace_back(t, ineq.coeffs()[t]);
  }

  for (std::size_t gi = 0; gi < catalog.size(); ++gi) {
    const FiniteGroup& g = catalog[gi].group;
    const std::vector<Subgroup> subs = enumerate_subgroups(g);
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::vector<Subgroup> tuple(static_cast<std::size_t>(m), subs.front());
    std::uint64_t examined = 0;
    for (;;) {
      if (examined == options.max_tuples_per_group) {
        outcome.truncated = true;
        break;
      }
      for (std::size_t i = 0; i < idx.size(); ++i) tuple[i] = subs[idx[i]];
      const auto orders = detail::intersection_orders(g, tuple);
      ExactLogLin slack;
      for (const auto& [slot, c] : active) {
        slack.add_term(c, static_cast<std::size_t>(g.order()) / orders[slot]);
      }
      ++examined;
      if (loglin_sign(slack) == Sign::negative) {
        outcome.tuples_examined += examined;
        outcome.violation = GroupViolation{catalog[gi].name, gi, idx, tuple, slack.normalized()};
        return outcome;
      }
      if (!detail::advance_odometer(idx, subs.size())) break;
    }
    outcome.tuples_examined += examined;
  }
  return outcome;
}

}  // namespace infodim
