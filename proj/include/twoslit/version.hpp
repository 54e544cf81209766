#pragma once

namespace twoslit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace twoslit
