#pragma once

namespace zb {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace zb
