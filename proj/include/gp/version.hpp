#pragma once

namespace gp {
inline constexpr const char* kVersion = "0.1.0";
}
