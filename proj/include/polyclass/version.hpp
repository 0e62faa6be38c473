#pragma once

#include <string_view>

namespace polyclass {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace polyclass
