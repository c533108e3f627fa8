#pragma once

#include <string>
#include <utility>
#include <vector>

#include "infodim/error.hpp"
#include "infodim/loglin.hpp"
#include "infodim/subset.hpp"

namespace infodim {

enum class EntropyMode { floating, exact };

inline constexpr double kEntropyTolerance = 1e-9;

/// The 2^m - 1 joint entropies H(xi_I), in bits, indexed by SubsetIndex.
/// Float mode holds doubles; exact mode holds log-linear values and is used
/// for uniform-fiber supports where every entropy is a log of an integer.
class EntropyVector {
 public:
  static EntropyVector from_floats(int m, std::vector<double> values) {
    check_variable_count(m);
    check_size(m, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] >= -kEntropyTolerance)) {
        throw Error("invalid-entropy", "value at " + to_string(SubsetIndex(static_cast<std::uint32_t>(i + 1))) +
                                           " is negative");
      }
    }
    EntropyVector v(m, EntropyMode::floating);
    v.floats_ = std::move(values);
    return v;
  }

  static EntropyVector from_exact(int m, std::vector<ExactLogLin> values) {
    check_variable_count(m);
    check_size(m, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (loglin_sign(values[i]) == Sign::negative) {
        throw Error("invalid-entropy", "value at " + to_string(SubsetIndex(static_cast<std::uint32_t>(i + 1))) +
                                           " is negative");
      }
    }
    EntropyVector v(m, EntropyMode::exact);
    v.exact_ = std::move(values);
    return v;
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] EntropyMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t size() const noexcept { return subset_count(m_); }

  [[nodiscard]] const std::vector<double>& floats() const {
    require(EntropyMode::floating);
    return floats_;
  }
  [[nodiscard]] const std::vector<ExactLogLin>& exacts() const {
    require(EntropyMode::exact);
    return exact_;
  }
  [[nodiscard]] const ExactLogLin& exact(SubsetIndex s) const { return exacts().at(s.slot()); }

  /// Float value in either mode (exact values are rendered).
  [[nodiscard]] double value(SubsetIndex s) const {
    return mode_ == EntropyMode::floating ? floats_.at(s.slot()) : exact_.at(s.slot()).to_double();
  }

  [[nodiscard]] EntropyVector to_float() const {
    if (mode_ == EntropyMode::floating) return *this;
    std::vector<double> out;
    out.reserve(exact_.size());
    for (const auto& x : exact_) out.push_back(x.to_double());
    return from_floats(m_, std::move(out));
  }

 private:
  EntropyVector(int m, EntropyMode mode) : m_(m), mode_(mode) {}

  static void check_size(int m, std::size_t n) {
    if (n != subset_count(m)) {
      throw Error("dimension-mismatch", "expected " + std::to_string(subset_count(m)) + " entries, got " +
                                            std::to_string(n));
    }
  }
  void require(EntropyMode mode) const {
    if (mode_ != mode) throw Error("mode-mismatch", "entropy vector is in the other mode");
  }

  int m_;
  EntropyMode mode_;
  std::vector<double> floats_;
  std::vector<ExactLogLin> exact_;
};

}  // namespace infodim
