#pragma once

namespace structcorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace structcorr
