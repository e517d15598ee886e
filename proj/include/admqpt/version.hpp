#pragma once

namespace admqpt {
inline constexpr const char* kVersion = "0.3.1";
}
