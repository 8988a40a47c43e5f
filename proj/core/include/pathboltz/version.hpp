#pragma once

namespace pathboltz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pathboltz
