#pragma once

namespace harma {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace harma
