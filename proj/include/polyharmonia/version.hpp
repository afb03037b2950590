#pragma once

namespace polyharmonia {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "polyharmonia/1";

}  // namespace polyharmonia
