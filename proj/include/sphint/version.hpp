#pragma once

namespace sphint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sphint
