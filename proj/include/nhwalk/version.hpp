#pragma once

namespace nhwalk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nhwalk
