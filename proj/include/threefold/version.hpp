#pragma once

namespace threefold {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace threefold
