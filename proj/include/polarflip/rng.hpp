#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace polarflip {

namespace detail {

// SplitMix64 output stage.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace detail

/// Counter-based generator: SplitMix64 evaluated at arbitrary offsets of a
/// stream keyed by (seed, stream, block). word(i) is a pure function of the
/// key and i, so any (seed, codeword, position) triple maps to the same
/// value regardless of call order or thread.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block)
      : key_(detail::mix64(detail::mix64(seed + detail::kGolden * (stream + 1)) +
                           detail::kGolden * (block + 1))) {}

  std::uint64_t word(std::uint64_t i) const {
    return detail::mix64(key_ + detail::kGolden * (i + 1));
  }

  std::uint8_t bit(std::uint64_t i) const {
    return static_cast<std::uint8_t>((word(i >> 6) >> (i & 63)) & 1);
  }

  // Uniform on (0, 1]; never returns 0 so log() below is safe.
  double uniform(std::uint64_t i) const {
    return static_cast<double>((word(i) >> 11) + 1) * 0x1.0p-53;
  }

  // Box-Muller pair with standard-normal marginals.
  void gaussian_pair(std::uint64_t pair_index, double& z0, double& z1) const {
    const double u1 = uniform(2 * pair_index);
    const double u2 = uniform(2 * pair_index + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z0 = radius * std::cos(angle);
    z1 = radius * std::sin(angle);
  }

 private:
  std::uint64_t key_;
};

// Stream ids used by the simulation pipeline.
inline constexpr std::uint64_t kNoiseStream = 1;
inline constexpr std::uint64_t kPayloadStream = 2;

}  // namespace polarflip
