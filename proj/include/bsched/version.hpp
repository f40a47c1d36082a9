#pragma once

namespace bsched {

inline constexpr const char* kVersion = "0.1.0";

} // namespace bsched
