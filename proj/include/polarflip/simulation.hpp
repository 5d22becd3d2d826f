#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polarflip/calibration.hpp"
#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/flip_decoder.hpp"
#include "polarflip/types.hpp"

namespace polarflip {

struct CampaignConfig {
  CodeSpec spec;
  CrcSpec crc;
  DecoderParams decoder;
  SnrType snr_type = SnrType::ebn0;
  std::vector<double> snr_points_db;
  std::uint64_t max_codewords = 100000;
  std::uint64_t min_frame_errors = 100;  // 0 disables early termination
  std::uint64_t seed = 42;
  unsigned workers = 1;
  // Per-SNR gate thresholds; looked up at each point when the decoder is
  // dscf-es. Without a table the fixed value in decoder.early_stop is used.
  std::optional<ThresholdTable> thresholds;
};

struct SnrResult {
  double snr_db = 0.0;
  std::uint64_t codewords = 0;
  std::uint64_t frame_errors = 0;
  double fer = 0.0;
  double t_av = 0.0;
  double v_t = std::numeric_limits<double>::quiet_NaN();  // nan below 2 samples
  std::uint64_t early_stops = 0;
  DecoderKind decoder = DecoderKind::dscf;
};

struct TrialStats {
  double t_av = 0.0;
  std::optional<double> v_t;  // absent below 2 samples
};

/// Mean and sample variance (divisor S-1) of per-codeword trial counts.
TrialStats compute_stats(const std::vector<std::uint32_t>& trials);

/// Simulates one SNR point until max_codewords or min_frame_errors is hit
/// (checked at fixed batch boundaries, so the stopping point and every
/// aggregate are identical for any worker count).
SnrResult run_snr_point(const CampaignConfig& config, double snr_db);

std::vector<SnrResult> run_campaign(const CampaignConfig& config);

/// CSV with header snr_db,codewords,frame_errors,fer,t_av,v_t,early_stops,decoder.
void emit_results(const std::vector<SnrResult>& results, const std::string& path);
std::vector<SnrResult> parse_results(const std::string& path);

}  // namespace polarflip
