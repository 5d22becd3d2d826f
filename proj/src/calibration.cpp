#include "polarflip/calibration.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "pipeline.hpp"

namespace polarflip {

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

double MetricDistribution::bin_value(std::size_t bin) const {
  if (bin >= counts.size()) {
    throw std::invalid_argument("MetricDistribution: bin out of range");
  }
  if (counts[bin] == 0) {
    throw std::runtime_error("MetricDistribution: bin is empty");
  }
  return normalized ? phi_sums[bin]
                    : phi_sums[bin] / static_cast<double>(counts[bin]);
}

MetricDistribution calibrate_distribution(const CodeSpec& spec,
                                          const CrcSpec& crc,
                                          const ChannelConfig& channel,
                                          const CalibrationConfig& config) {
  if (config.codewords < 1) {
    throw std::invalid_argument("calibrate: codeword count must be >= 1");
  }
  if (std::min<std::size_t>(config.trial_budget, spec.info_set.size()) < 2) {
    throw std::invalid_argument(
        "calibrate: need at least two flip candidates to form the variance");
  }

  DecoderParams params;
  params.kind = DecoderKind::dscf;
  params.max_trials = config.trial_budget;
  params.c_param = config.c_param;

  const unsigned workers = std::max(1u, config.workers);
  std::vector<std::unique_ptr<detail::CodewordRunner>> runners;
  runners.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    runners.push_back(std::make_unique<detail::CodewordRunner>(
        spec, crc, channel, params, config.seed));
  }

  MetricDistribution dist;
  dist.snr_db = channel.snr_db;
  dist.phi_sums.assign(config.trial_budget + 2, 0.0);
  dist.counts.assign(config.trial_budget + 2, 0);

  std::vector<detail::CalOutcome> slots;
  std::uint64_t done = 0;
  while (done < config.codewords) {
    const std::uint64_t n =
        std::min<std::uint64_t>(detail::kBatchSize, config.codewords - done);
    slots.resize(n);
    detail::parallel_batch(n, workers, [&](std::uint64_t i, unsigned w) {
      slots[i] = runners[w]->calibrate(done + i);
    });
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::size_t bin =
          slots[i].match ? slots[i].trials : dist.failure_bin();
      dist.phi_sums[bin] += slots[i].phi;
      dist.counts[bin] += 1;
    }
    done += n;
  }

  for (std::size_t b = 0; b < dist.counts.size(); ++b) {
    if (dist.counts[b] > 0) {
      dist.phi_sums[b] /= static_cast<double>(dist.counts[b]);
    }
  }
  dist.normalized = true;
  return dist;
}

double extract_threshold(const MetricDistribution& dist) {
  if (dist.counts.empty() || dist.counts[dist.failure_bin()] == 0) {
    throw std::runtime_error(
        "extract_threshold: failure bin is empty, cannot calibrate");
  }
  return dist.bin_value(dist.failure_bin());
}

double lookup_threshold(const ThresholdTable& table, double snr_db) {
  if (table.rows.empty()) {
    throw std::invalid_argument("lookup_threshold: empty table");
  }
  const auto& rows = table.rows;
  if (snr_db <= rows.front().snr_db) {
    return rows.front().phi_thr;
  }
  if (snr_db >= rows.back().snr_db) {
    return rows.back().phi_thr;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (snr_db <= rows[i].snr_db) {
      const auto& a = rows[i - 1];
      const auto& b = rows[i];
      if (snr_db == b.snr_db) {
        return b.phi_thr;
      }
      const double w = (snr_db - a.snr_db) / (b.snr_db - a.snr_db);
      return a.phi_thr + w * (b.phi_thr - a.phi_thr);
    }
  }
  return rows.back().phi_thr;
}

ThresholdBuildResult build_threshold_table(const CodeSpec& spec,
                                           const CrcSpec& crc,
                                           const std::vector<double>& snr_points_db,
                                           SnrType snr_type,
                                           const CalibrationConfig& config,
                                           std::size_t t_reduced) {
  if (snr_points_db.empty()) {
    throw std::invalid_argument("build_threshold_table: no SNR points");
  }
  std::vector<double> points = snr_points_db;
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw std::invalid_argument("build_threshold_table: duplicate SNR points");
  }

  ThresholdBuildResult result;
  result.table.t_reduced = t_reduced;
  for (const double snr : points) {
    const ChannelConfig channel =
        make_channel_config(snr, spec.rate(), snr_type);
    MetricDistribution dist = calibrate_distribution(spec, crc, channel, config);
    result.table.rows.push_back({snr, extract_threshold(dist)});
    result.distributions.push_back(std::move(dist));
  }
  return result;
}

void save_threshold_table(const ThresholdTable& table, const std::string& path) {
  if (table.rows.empty()) {
    throw std::invalid_argument("save_threshold_table: empty table");
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!(table.rows[i].phi_thr > 0.0)) {
      throw std::invalid_argument("save_threshold_table: phi_thr must be > 0");
    }
    if (i > 0 && !(table.rows[i].snr_db > table.rows[i - 1].snr_db)) {
      throw std::invalid_argument(
          "save_threshold_table: snr_db must be strictly increasing");
    }
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << "# t_red=" << table.t_reduced << "\n";
  out << "snr_db,phi_thr\n";
  for (const auto& row : table.rows) {
    out << format_double(row.snr_db) << "," << format_double(row.phi_thr)
        << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

ThresholdTable load_threshold_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open: " + path);
  }
  ThresholdTable table;
  bool saw_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      const auto pos = line.find("t_red=");
      if (pos != std::string::npos) {
        table.t_reduced = std::stoul(line.substr(pos + 6));
      }
      continue;
    }
    if (!saw_header) {
      if (line != "snr_db,phi_thr") {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected header snr_db,phi_thr");
      }
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected snr_db,phi_thr row");
    }
    ThresholdTable::Row row;
    try {
      row.snr_db = std::stod(line.substr(0, comma));
      row.phi_thr = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed number");
    }
    if (!table.rows.empty() && !(row.snr_db > table.rows.back().snr_db)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": snr_db must be strictly increasing");
    }
    if (!(row.phi_thr > 0.0)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": phi_thr must be > 0");
    }
    table.rows.push_back(row);
  }
  if (table.rows.empty()) {
    throw std::runtime_error(path + ": no threshold rows");
  }
  return table;
}

void save_distributions(const std::vector<MetricDistribution>& dists,
                        const std::string& path) {
  if (dists.empty()) {
    throw std::invalid_argument("save_distributions: nothing to write");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << "snr_db,bin,count,phi_avg\n";
  for (const auto& dist : dists) {
    for (std::size_t b = 0; b < dist.counts.size(); ++b) {
      if (dist.counts[b] == 0) {
        continue;
      }
      const std::string label =
          (b == dist.failure_bin()) ? "fail" : std::to_string(b);
      out << format_double(dist.snr_db) << "," << label << ","
          << dist.counts[b] << "," << format_double(dist.bin_value(b)) << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace polarflip
