#pragma once

namespace stockdata {

inline constexpr const char* kToolName = "stockdata";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace stockdata
