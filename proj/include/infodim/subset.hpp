#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "infodim/error.hpp"

namespace infodim {

inline constexpr int kMaxVariables = 8;

/// Nonempty subset of the variable positions 1..m, stored as a bitmask
/// (bit i-1 set means position i is in the subset).
class SubsetIndex {
 public:
  explicit SubsetIndex(std::uint32_t mask) : mask_(mask) {
    if (mask == 0 || mask >= (1u << kMaxVariables)) {
      throw Error("invalid-subset", "mask " + std::to_string(mask) + " out of range");
    }
  }

  static SubsetIndex singleton(int position) { return SubsetIndex(1u << (position - 1)); }
  static SubsetIndex full(int m) { return SubsetIndex((1u << m) - 1); }

  [[nodiscard]] std::uint32_t mask() const noexcept { return mask_; }
  /// Dense slot in an entropy vector: subsets are stored in ascending mask order.
  [[nodiscard]] std::size_t slot() const noexcept { return mask_ - 1; }
  [[nodiscard]] int size() const noexcept { return std::popcount(mask_); }
  [[nodiscard]] bool contains(int position) const noexcept {
    return (mask_ >> (position - 1)) & 1u;
  }
  [[nodiscard]] bool is_subset_of(SubsetIndex other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  [[nodiscard]] bool fits(int m) const noexcept { return mask_ < (1u << m); }

  /// 1-based positions in ascending order.
  [[nodiscard]] std::vector<int> positions() const {
    std::vector<int> out;
    for (int i = 0; i < kMaxVariables; ++i) {
      if ((mask_ >> i) & 1u) out.push_back(i + 1);
    }
    return out;
  }

  friend SubsetIndex operator|(SubsetIndex a, SubsetIndex b) { return SubsetIndex(a.mask_ | b.mask_); }
  friend auto operator<=>(SubsetIndex, SubsetIndex) = default;

 private:
  std::uint32_t mask_;
};

inline void check_variable_count(int m, int lo = 1, int hi = kMaxVariables) {
  if (m < lo || m > hi) {
    throw Error("variable-count", "m=" + std::to_string(m) + " outside [" + std::to_string(lo) +
                                      ", " + std::to_string(hi) + "]");
  }
}

inline std::size_t subset_count(int m) { return (std::size_t{1} << m) - 1; }

/// All nonempty subsets of {1..m} in ascending bitmask order.
inline std::vector<SubsetIndex> subsets(int m) {
  check_variable_count(m);
  std::vector<SubsetIndex> out;
  out.reserve(subset_count(m));
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) out.emplace_back(mask);
  return out;
}

/// "{1,2}" or, with names, "x,y".
inline std::string to_string(SubsetIndex s) {
  std::string out = "{";
  bool first = true;
  for (int p : s.positions()) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

inline std::string join_names(SubsetIndex s, const std::vector<std::string>& names) {
  std::string out;
  for (int p : s.positions()) {
    if (!out.empty()) out += ",";
    out += names.at(static_cast<std::size_t>(p - 1));
  }
  return out;
}

}  // namespace infodim
