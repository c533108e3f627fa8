#pragma once

#include "infodim/dsl.hpp"
#include "infodim/shannon.hpp"

namespace infodim {

/// Zhang-Yeung inequality on (x, y, z, w) = positions (1, 2, 3, 4).
inline ParsedInequality zhang_yeung() {
  return parse_inequality(kZhangYeungText, std::vector<std::string>{"x", "y", "z", "w"});
}

}  // namespace infodim
