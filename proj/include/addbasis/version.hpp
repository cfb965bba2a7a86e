#pragma once

namespace addbasis {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace addbasis
