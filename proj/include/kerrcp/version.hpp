#pragma once

namespace kerrcp {
inline constexpr const char* kVersion = "1.0.0";
}
