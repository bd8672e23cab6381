#pragma once

namespace duetherm {
inline constexpr const char* kVersion = "0.1.0";
}
