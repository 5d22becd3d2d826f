#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/sc_decoder.hpp"
#include "polarflip/types.hpp"

namespace polarflip {

/// Flip candidates from an initial SC pass, ascending by metric, ties broken
/// by ascending bit index. Length is min(T, |info_set|).
struct FlipList {
  enum class Flavor { scf, dscf };
  struct Entry {
    std::size_t bit_index;
    double metric;
  };
  std::vector<Entry> entries;
  Flavor flavor = Flavor::scf;
};

struct EarlyStopConfig {
  double phi_threshold = 0.0;
  std::size_t t_reduced = 0;
  bool enabled = false;
};

struct DecodeOutcome {
  BitVector payload_hat;        // k + r bits read off the non-frozen positions
  BitVector u_hat;              // length N
  std::size_t trials_used = 0;  // 0 = first pass, otherwise flip trials run
  bool crc_ok = false;
  bool early_stopped = false;
  std::optional<double> phi;  // variance of the candidate metrics, when formed
};

/// Candidate metric m_i = |alpha_dec[i]| for non-frozen i; smallest T kept.
FlipList scf_metrics(const LlrVector& alpha_dec, const CodeSpec& spec,
                     std::size_t trial_budget);

/// Candidate metric m_i = |alpha_dec[i]|
///   + (1/c) * sum over non-frozen j <= i of ln(1 + e^(-c |alpha_dec[j]|)).
FlipList dscf_metrics(const LlrVector& alpha_dec, const CodeSpec& spec,
                      std::size_t trial_budget, double c);

/// Sample variance (divisor T-1) of the candidate metrics. Needs >= 2 entries.
double early_stop_metric(const FlipList& flip_list);

/// Runs up to `trial_budget` further SC passes, pass t flipping entry t of the
/// flip list, returning on the first CRC success. Assumes the initial pass
/// already failed CRC (otherwise the caller short-circuits with t = 0).
DecodeOutcome scf_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                         const CrcSpec& crc, const FlipList& flip_list,
                         std::size_t trial_budget);
DecodeOutcome scf_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                         const CrcSpec& crc, const FlipList& flip_list,
                         std::size_t trial_budget, ScDecoder& scratch);

/// Full flip decode: initial pass, CRC short-circuit, candidate metrics,
/// variance gate (budget drops to t_reduced when phi exceeds the threshold),
/// then the trial loop.
DecodeOutcome dscf_decode_with_early_stop(const LlrVector& alpha_ch,
                                          const CodeSpec& spec,
                                          const CrcSpec& crc,
                                          std::size_t trial_budget, double c,
                                          const EarlyStopConfig& es);

enum class DecoderKind { sc, scf, dscf, dscf_es };

std::string decoder_kind_name(DecoderKind kind);
DecoderKind parse_decoder_kind(const std::string& name);

struct DecoderParams {
  DecoderKind kind = DecoderKind::dscf;
  std::size_t max_trials = 10;
  double c_param = 0.3;
  EarlyStopConfig early_stop;
};

/// Dispatch over DecoderKind; `scratch` lets a worker reuse one decoder's
/// buffers across codewords.
DecodeOutcome decode_received(const LlrVector& alpha_ch, const CodeSpec& spec,
                              const CrcSpec& crc, const DecoderParams& params,
                              ScDecoder& scratch);

DecodeOutcome decode_received(const LlrVector& alpha_ch, const CodeSpec& spec,
                              const CrcSpec& crc, const DecoderParams& params);

}  // namespace polarflip
