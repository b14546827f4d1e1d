#pragma once

namespace bswet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bswet
