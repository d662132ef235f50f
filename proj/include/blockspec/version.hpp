#pragma once

namespace blockspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blockspec
