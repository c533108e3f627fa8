#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace infodim {

/// Library failure with a short machine-readable kind ("syntax",
/// "dimension-mismatch", ...) and a free-form detail. The CLI prints these
/// as `error: <kind>: <detail>`.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  [[nodiscard]] const std::string& kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
};

}  // namespace infodim
