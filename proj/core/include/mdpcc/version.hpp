#pragma once

namespace mdpcc {

inline constexpr const char* kToolName = "mdpcc";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace mdpcc
