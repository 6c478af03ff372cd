#pragma once

namespace spinladder {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spinladder
