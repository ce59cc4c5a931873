#pragma once

namespace ptqed {
inline constexpr const char* kVersion = "1.0.0";
}
