#pragma once

#include "polarflip/types.hpp"

namespace polarflip {

/// Generator polynomial given as the mask of the r low-order coefficients
/// (leading z^r term implied). Default is z^16 + z^15 + z^2 + 1.
/// Convention: MSB-first shift register, zero initial register, no final
/// XOR, no reflection.
struct CrcSpec {
  std::uint32_t degree = 16;
  std::uint64_t polynomial = 0x8005;
  std::uint64_t initial_register = 0;
};

void validate(const CrcSpec& spec);

/// Remainder of message * z^r divided by the generator, MSB-first.
BitVector crc_compute(const BitVector& message, const CrcSpec& spec);

BitVector crc_append(const BitVector& message, const CrcSpec& spec);

/// True iff the trailing r bits equal the CRC of the leading bits.
bool crc_check(const BitVector& payload, const CrcSpec& spec);

}  // namespace polarflip
