#include "polarflip/crc.hpp"

#include <stdexcept>

namespace polarflip {

namespace {

std::uint64_t register_mask(std::uint32_t degree) {
  return degree >= 64 ? ~0ull : (1ull << degree) - 1;
}

}  // namespace

void validate(const CrcSpec& spec) {
  if (spec.degree < 1 || spec.degree > 64)
    throw std::invalid_argument("CRC degree must be in [1, 64]");
  if ((spec.polynomial & 1ull) == 0)
    throw std::invalid_argument("CRC polynomial must have constant term 1");
  if (spec.polynomial & ~register_mask(spec.degree))
    throw std::invalid_argument("CRC polynomial mask wider than degree");
}

BitVector crc_compute(const BitVector& message, const CrcSpec& spec) {
  validate(spec);
  const std::uint64_t mask = register_mask(spec.degree);
  const std::uint64_t top = 1ull << (spec.degree - 1);
  std::uint64_t reg = spec.initial_register & mask;
  for (auto bit : message) {
    const bool feedback = ((reg & top) != 0) ^ (bit != 0);
    reg = (reg << 1) & mask;
    if (feedback) reg ^= spec.polynomial;
  }
  BitVector out(spec.degree);
  for (std::uint32_t i = 0; i < spec.degree; ++i)
    out[i] = static_cast<std::uint8_t>((reg >> (spec.degree - 1 - i)) & 1);
  return out;
}

BitVector crc_append(const BitVector& message, const CrcSpec& spec) {
  BitVector payload = message;
  const BitVector crc = crc_compute(message, spec);
  payload.insert(payload.end(), crc.begin(), crc.end());
  return payload;
}

bool crc_check(const BitVector& payload, const CrcSpec& spec) {
  validate(spec);
  if (payload.size() < spec.degree)
    throw std::invalid_argument("crc_check: payload shorter than CRC");
  const BitVector message(payload.begin(), payload.end() - spec.degree);
  const BitVector crc = crc_compute(message, spec);
  for (std::uint32_t i = 0; i < spec.degree; ++i)
    if (crc[i] != payload[payload.size() - spec.degree + i]) return false;
  return true;
}

}  // namespace polarflip
