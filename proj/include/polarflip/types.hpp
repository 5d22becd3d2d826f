#pragma once

#include <cstdint>
#include <vector>

namespace polarflip {

using BitVector = std::vector<std::uint8_t>;
using LlrVector = std::vector<double>;

enum class SnrType { ebn0, esn0 };

// Tie (alpha == 0) decodes to bit 0.
inline std::uint8_t hard_decision(double alpha) { return alpha < 0.0 ? 1u : 0u; }

}  // namespace polarflip
