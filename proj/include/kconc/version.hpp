#pragma once

namespace kconc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kconc
