#pragma once

#include <cstdint>
#include <functional>

#include "polarflip/channel.hpp"
#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/flip_decoder.hpp"
#include "polarflip/types.hpp"

namespace polarflip::detail {

inline constexpr std::uint64_t kBatchSize = 4096;

/// Calls fn(i, worker) for i in [0, count); worker w covers i = w, w+workers,
/// ... Each call writes only its own slot, so results merge deterministically
/// afterwards regardless of the worker count.
void parallel_batch(std::uint64_t count, unsigned workers,
                    const std::function<void(std::uint64_t, unsigned)>& fn);

struct SimOutcome {
  std::uint32_t trials = 0;
  bool error = false;
  bool early_stopped = false;
};

struct CalOutcome {
  std::uint32_t trials = 0;
  bool match = false;
  double phi = 0.0;
};

/// One worker's end-to-end path: seeded payload, encode, BPSK + AWGN, decode.
/// All randomness is a pure function of (seed, codeword index), so outcomes
/// do not depend on which worker handles which codeword.
class CodewordRunner {
 public:
  CodewordRunner(const CodeSpec& spec, const CrcSpec& crc,
                 const ChannelConfig& channel, const DecoderParams& params,
                 std::uint64_t seed);

  SimOutcome simulate(std::uint64_t codeword_index);

  /// Ungated decode that always forms the candidate metrics and their
  /// variance from the initial pass, as threshold calibration requires.
  CalOutcome calibrate(std::uint64_t codeword_index);

 private:
  void prepare(std::uint64_t codeword_index);
  bool message_matches(const BitVector& payload_hat) const;

  const CodeSpec& spec_;
  const CrcSpec& crc_;
  ChannelConfig channel_;
  DecoderParams params_;
  std::uint64_t seed_;
  ScDecoder decoder_;
  BitVector message_;
  BitVector payload_;
  BitVector u_;
  LlrVector symbols_;
  LlrVector received_;
  LlrVector alpha_;
};

}  // namespace polarflip::detail
