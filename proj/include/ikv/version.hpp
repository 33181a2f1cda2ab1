#pragma once

namespace ikv {

inline constexpr const char* artifact_name = "ikv";
inline constexpr const char* artifact_version = "0.1.0";

} // namespace ikv
