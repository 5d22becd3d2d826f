#pragma once

#include <cstdint>

#include "polarflip/rng.hpp"
#include "polarflip/types.hpp"

namespace polarflip {

/// BPSK over AWGN, parameterised by an SNR in dB.
struct ChannelConfig {
  double snr_db = 0.0;
  SnrType snr_type = SnrType::ebn0;
  double rate = 0.5;       // code rate, used when snr_type == ebn0
  double sigma_sq = 0.0;   // derived noise variance
  double llr_scale = 0.0;  // 2 / sigma_sq
};

/// Derives sigma^2 = 1 / (2 * R * 10^(snr/10)) for Eb/N0, with R = 1 for Es/N0.
ChannelConfig make_channel_config(double snr_db, double rate,
                                  SnrType snr_type = SnrType::ebn0);

/// BPSK map: bit 0 -> +1, bit 1 -> -1.
void modulate(const BitVector& x, LlrVector& symbols);

/// Adds N(0, sigma^2) noise; the noise value for position i depends only on
/// (rng key, i), so a codeword's channel realisation is reproducible.
void transmit(const LlrVector& symbols, const ChannelConfig& config,
              const CounterRng& rng, LlrVector& received);

/// Channel LLRs alpha_i = 2 y_i / sigma^2.
void channel_llr(const LlrVector& received, const ChannelConfig& config,
                 LlrVector& alpha);

}  // namespace polarflip
