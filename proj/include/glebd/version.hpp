#pragma once

namespace glebd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace glebd
