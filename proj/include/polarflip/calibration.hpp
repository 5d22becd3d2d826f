#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarflip/channel.hpp"
#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/types.hpp"

namespace polarflip {

/// Average of the early-stopping metric, binned by the number of trials the
/// ungated flip decoder needed. Bins 0..T hold decodes whose final message
/// matched the transmitted one; the last bin holds mismatches.
struct MetricDistribution {
  std::vector<double> phi_sums;       // T+2 bins; per-bin mean once normalized
  std::vector<std::uint64_t> counts;  // same layout
  double snr_db = 0.0;
  bool normalized = false;

  std::size_t trial_budget() const { return counts.size() - 2; }
  std::size_t failure_bin() const { return counts.size() - 1; }
  double bin_value(std::size_t bin) const;  // mean phi of a non-empty bin
};

struct CalibrationConfig {
  std::size_t trial_budget = 10;  // T
  double c_param = 0.3;
  std::uint64_t codewords = 100000;  // sample size S
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

/// Monte Carlo estimate of the metric distribution: per codeword, run the
/// ungated flip decoder, compute the metric variance from the initial pass
/// (for every codeword, including first-pass successes), and bin it by the
/// trial count on message match or into the failure bin on mismatch.
MetricDistribution calibrate_distribution(const CodeSpec& spec,
                                          const CrcSpec& crc,
                                          const ChannelConfig& channel,
                                          const CalibrationConfig& config);

/// The gate threshold is the mean metric of the undecodable codewords.
double extract_threshold(const MetricDistribution& dist);

struct ThresholdTable {
  struct Row {
    double snr_db;
    double phi_thr;
  };
  std::vector<Row> rows;  // snr_db strictly increasing
  std::size_t t_reduced = 3;
};

/// Exact match, linear interpolation between neighbours, clamped outside.
double lookup_threshold(const ThresholdTable& table, double snr_db);

struct ThresholdBuildResult {
  ThresholdTable table;
  std::vector<MetricDistribution> distributions;
};

ThresholdBuildResult build_threshold_table(const CodeSpec& spec,
                                           const CrcSpec& crc,
                                           const std::vector<double>& snr_points_db,
                                           SnrType snr_type,
                                           const CalibrationConfig& config,
                                           std::size_t t_reduced);

/// CSV `snr_db,phi_thr` with a `# t_red=<int>` comment line.
void save_threshold_table(const ThresholdTable& table, const std::string& path);
ThresholdTable load_threshold_table(const std::string& path);

/// CSV `snr_db,bin,count,phi_avg` with bin in {0..T, "fail"}; empty bins omitted.
void save_distributions(const std::vector<MetricDistribution>& dists,
                        const std::string& path);

}  // namespace polarflip
