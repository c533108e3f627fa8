#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "infodim/error.hpp"

namespace infodim {

/// Finite group given by its Cayley table over element indices 0..n-1.
/// The identity is element 0.
class FiniteGroup {
 public:
  static constexpr int kIdentity = 0;

  /// Validates the group axioms. Errors name the first violation found, in
  /// the order: shape, identity, inverses, associativity.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw Error("invalid-table", "empty table");
    FiniteGroup g;
    g.n_ = n;
    g.table_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table[a].size()) != n) {
        throw Error("invalid-table", "row " + std::to_string(a) + " has length " + std::to_string(table[a].size()));
      }
      for (int x : table[a]) {
        if (x < 0 || x >= n) throw Error("invalid-table", "entry " + std::to_string(x) + " out of range");
        g.table_.push_back(x);
      }
    }
    for (int a = 0; a < n; ++a) {
      if (g.op(kIdentity, a) != a || g.op(a, kIdentity) != a) {
        throw Error("no-identity", "element 0 is not a two-sided identity (fails at " + std::to_string(a) + ")");
      }
    }
    g.inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (g.op(a, b) == kIdentity && g.op(b, a) == kIdentity) {
          g.inverse_[a] = b;
          break;
        }
      }
      if (g.inverse_[a] < 0) throw Error("no-inverse", "element " + std::to_string(a));
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const int ab = g.op(a, b);
        for (int c = 0; c < n; ++c) {
          if (g.op(ab, c) != g.op(a, g.op(b, c))) {
            throw Error("not-associative",
                        "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    return g;
  }

  [[nodiscard]] int order() const noexcept { return n_; }
  [[nodiscard]] int op(int a, int b) const noexcept {
    return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)];
  }
  [[nodiscard]] int inverse(int a) const { return inverse_.at(static_cast<std::size_t>(a)); }

  [[nodiscard]] std::vector<std::vector<int>> table() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) out[a].push_back(op(a, b));
    }
    return out;
  }

 private:
  FiniteGroup() = default;

  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

/// Sorted element list of a subgroup. Normality is not required.
class Subgroup {
 public:
  [[nodiscard]] const std::vector<int>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] bool contains(int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  /// Order used for catalog enumeration: by size, then lexicographically.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements_ < b.elements_;
  }

 private:
  explicit Subgroup(std::vector<int> elements) : elements_(std::move(elements)) {}

  friend Subgroup subgroup_from_generators(const FiniteGroup&, std::span<const int>);
  friend Subgroup subgroup_from_elements(const FiniteGroup&, std::vector<int>);
  friend Subgroup intersect(const FiniteGroup&, std::span<const Subgroup>);

  std::vector<int> elements_;
};

/// Closure of `gens` under multiplication (finite, so also under inverses).
inline Subgroup subgroup_from_generators(const FiniteGroup& g, std::span<const int> gens) {
  for (int x : gens) {
    if (x < 0 || x >= g.order()) throw Error("invalid-element", std::to_string(x));
  }
  std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
  std::vector<int> members{FiniteGroup::kIdentity};
  in[FiniteGroup::kIdentity] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int s : gens) {
      const int x = g.op(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(std::move(members));
}

/// Validates an explicit element list as a subgroup.
inline Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (int x : elements) {
    if (x < 0 || x >= g.order()) throw Error("invalid-element", std::to_string(x));
  }
  if (elements.empty() || elements.front() != FiniteGroup::kIdentity) {
    throw Error("not-a-subgroup", "missing the identity");
  }
  for (int a : elements) {
    if (!std::binary_search(elements.begin(), elements.end(), g.inverse(a))) {
      throw Error("not-a-subgroup", "not closed under inverse at " + std::to_string(a));
    }
    for (int b : elements) {
      if (!std::binary_search(elements.begin(), elements.end(), g.op(a, b))) {
        throw Error("not-a-subgroup",
                    "not closed: " + std::to_string(a) + "*" + std::to_string(b) + "=" + std::to_string(g.op(a, b)));
      }
    }
  }
  return Subgroup(std::move(elements));
}

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<int> all(static_cast<std::size_t>(g.order()));
  std::iota(all.begin(), all.end(), 0);
  return subgroup_from_elements(g, std::move(all));
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return subgroup_from_generators(g, {}); }

/// Intersection of the given subgroups; the empty family gives G itself.
inline Subgroup intersect(const FiniteGroup& g, std::span<const Subgroup> parts) {
  if (parts.empty()) return whole_group(g);
  std::vector<int> acc = parts.front().elements();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<int> next;
    std::set_intersection(acc.begin(), acc.end(), parts[i].elements().begin(), parts[i].elements().end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return Subgroup(std::move(acc));
}

/// Subgroups generated by at most two elements, plus G itself, deduplicated
/// and sorted by (size, elements).
inline std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  auto keep = [&](Subgroup h) {
    if (seen.insert(h.elements()).second) out.push_back(std::move(h));
  };
  keep(trivial_subgroup(g));
  keep(whole_group(g));
  for (int a = 1; a < g.order(); ++a) {
    const int one[] = {a};
    keep(subgroup_from_generators(g, one));
    for (int b = a + 1; b < g.order(); ++b) {
      const int two[] = {a, b};
      keep(subgroup_from_generators(g, two));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw Error("invalid-argument", "cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table(t);
}

/// Element (a, b) has index a * |H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order() * h.order();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      t[x][y] = g.op(x / h.order(), y / h.order()) * h.order() + h.op(x % h.order(), y % h.order());
    }
  }
  return FiniteGroup::from_table(t);
}

/// Dihedral group of order 2n; element r^k s^f has index f * n + k.
inline FiniteGroup dihedral_group(int n) {
  if (n < 1) throw Error("invalid-argument", "dihedral parameter must be positive");
  const int size = 2 * n;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size)));
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      const int f = x / n, a = x % n;
      const int g = y / n, b = y % n;
      // r^a s^f r^b s^g = r^(a + (-1)^f b) s^(f+g)
      const int k = ((f == 0 ? a + b : a - b) % n + n) % n;
      t[x][y] = ((f + g) % 2) * n + k;
    }
  }
  return FiniteGroup::from_table(t);
}

/// Permutation group generated by `gens` on {0..degree-1}; elements are
/// indexed in lexicographic order of their images (identity first) and
/// composed as (p*q)(x) = p(q(x)).
inline FiniteGroup permutation_group(int degree, const std::vector<std::vector<int>>& gens) {
  if (degree < 1) throw Error("invalid-argument", "permutation degree must be positive");
  for (const auto& p : gens) {
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> id(static_cast<std::size_t>(degree));
    std::iota(id.begin(), id.end(), 0);
    if (sorted != id) throw Error("invalid-permutation", "generator is not a permutation of 0.." + std::to_string(degree - 1));
  }
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[static_cast<std::size_t>(q[x])];
    return r;
  };
  std::vector<int> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> members{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier) {
      for (const auto& s : gens) {
        auto r = compose(p, s);
        if (members.insert(r).second) next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  const std::vector<std::vector<int>> elems(members.begin(), members.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a) {
    for (std::size_t b = 0; b < elems.size(); ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  }
  return FiniteGroup::from_table(t);
}

inline FiniteGroup symmetric_group(int k) {
  if (k < 1) throw Error("invalid-argument", "symmetric group degree must be positive");
  std::vector<std::vector<int>> gens;
  if (k >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(k));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    std::vector<int> cycle(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
    gens = {swap, cycle};
  }
  return permutation_group(k, gens);
}

struct CatalogEntry {
  std::string name;
  FiniteGroup group;
};

/// Built-in search catalog, all groups of order <= max_order among:
/// cyclic Z_n (n <= 64), products of two or three cyclic factors,
/// dihedral D_n (n <= 12, order 2n) and symmetric S_n (n <= 5).
inline std::vector<CatalogEntry> builtin_catalog(int max_order) {
  std::vector<CatalogEntry> out;
  for (int n = 2; n <= std::min(64, max_order); ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
  for (int a = 2; a * a <= max_order; ++a) {
    for (int b = a; a * b <= max_order; ++b) {
      out.push_back({"Z" + std::to_string(a) + "xZ" + std::to_string(b), direct_product(cyclic_group(a), cyclic_group(b))});
    }
  }
  for (int a = 2; a * a * a <= max_order; ++a) {
    for (int b = a; a * b * b <= max_order; ++b) {
      for (int c = b; a * b * c <= max_order; ++c) {
        out.push_back({"Z" + std::to_string(a) + "xZ" + std::to_string(b) + "xZ" + std::to_string(c),
                       direct_product(direct_product(cyclic_group(a), cyclic_group(b)), cyclic_group(c))});
      }
    }
  }
  for (int n = 3; n <= 12 && 2 * n <= max_order; ++n) out.push_back({"D" + std::to_string(n), dihedral_group(n)});
  int factorial = 1;
  for (int n = 1; n <= 5; ++n) {
    factorial *= n;
    if (n >= 3 && factorial <= max_order) out.push_back({"S" + std::to_string(n), symmetric_group(n)});
  }
  return out;
}

}  // namespace infodim
