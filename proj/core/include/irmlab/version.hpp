#pragma once

namespace irmlab {

inline constexpr const char* kVersion = "irmlab 1.0.0";

} // namespace irmlab
