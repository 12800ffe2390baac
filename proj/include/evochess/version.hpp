#pragma once

namespace evochess {

inline constexpr const char* Version = "1.0.0";

}  // namespace evochess
