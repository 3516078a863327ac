#pragma once

namespace natdist {

inline constexpr const char* kToolName = "natdist";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace natdist
