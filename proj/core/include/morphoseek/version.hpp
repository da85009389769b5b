#pragma once

namespace morphoseek {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace morphoseek
