#pragma once

namespace cardsort {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cardsort
