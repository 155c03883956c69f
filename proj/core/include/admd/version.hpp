#pragma once

namespace admd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace admd
