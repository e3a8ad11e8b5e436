#pragma once

namespace qmeta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qmeta
