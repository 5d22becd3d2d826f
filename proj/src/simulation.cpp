#include "polarflip/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "pipeline.hpp"

namespace polarflip {

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void validate_config(const CampaignConfig& config) {
  if (config.max_codewords < 1) {
    throw std::invalid_argument("campaign: max_codewords must be >= 1");
  }
  if (config.decoder.kind != DecoderKind::sc && config.decoder.max_trials < 1) {
    throw std::invalid_argument("campaign: flip decoders need max_trials >= 1");
  }
  if (config.decoder.kind == DecoderKind::dscf_es &&
      config.decoder.early_stop.enabled &&
      config.decoder.early_stop.t_reduced > config.decoder.max_trials) {
    throw std::invalid_argument("campaign: t_reduced exceeds max_trials");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

TrialStats compute_stats(const std::vector<std::uint32_t>& trials) {
  if (trials.empty()) {
    throw std::invalid_argument("compute_stats: empty sample");
  }
  TrialStats stats;
  double sum = 0.0;
  for (const std::uint32_t t : trials) {
    sum += t;
  }
  stats.t_av = sum / static_cast<double>(trials.size());
  if (trials.size() >= 2) {
    double ss = 0.0;
    for (const std::uint32_t t : trials) {
      const double d = static_cast<double>(t) - stats.t_av;
      ss += d * d;
    }
    stats.v_t = ss / static_cast<double>(trials.size() - 1);
  }
  return stats;
}

SnrResult run_snr_point(const CampaignConfig& config, double snr_db) {
  validate_config(config);
  const ChannelConfig channel =
      make_channel_config(snr_db, config.spec.rate(), config.snr_type);

  DecoderParams params = config.decoder;
  if (params.kind == DecoderKind::dscf_es && params.early_stop.enabled &&
      config.thresholds.has_value()) {
    params.early_stop.phi_threshold =
        lookup_threshold(*config.thresholds, snr_db);
  }

  const unsigned workers = std::max(1u, config.workers);
  std::vector<std::unique_ptr<detail::CodewordRunner>> runners;
  runners.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    runners.push_back(std::make_unique<detail::CodewordRunner>(
        config.spec, config.crc, channel, params, config.seed));
  }

  std::uint64_t done = 0;
  std::uint64_t errors = 0;
  std::uint64_t early = 0;
  std::uint64_t sum_t = 0;
  std::uint64_t sum_t2 = 0;
  std::vector<detail::SimOutcome> slots;
  while (done < config.max_codewords) {
    const std::uint64_t n =
        std::min<std::uint64_t>(detail::kBatchSize, config.max_codewords - done);
    slots.resize(n);
    detail::parallel_batch(n, workers, [&](std::uint64_t i, unsigned w) {
      slots[i] = runners[w]->simulate(done + i);
    });
    for (std::uint64_t i = 0; i < n; ++i) {
      errors += slots[i].error ? 1 : 0;
      early += slots[i].early_stopped ? 1 : 0;
      sum_t += slots[i].trials;
      sum_t2 += static_cast<std::uint64_t>(slots[i].trials) * slots[i].trials;
    }
    done += n;
    if (config.min_frame_errors > 0 && errors >= config.min_frame_errors) {
      break;
    }
  }

  SnrResult result;
  result.snr_db = snr_db;
  result.codewords = done;
  result.frame_errors = errors;
  result.fer = static_cast<double>(errors) / static_cast<double>(done);
  result.t_av = static_cast<double>(sum_t) / static_cast<double>(done);
  if (done >= 2) {
    // S * sum(t^2) - sum(t)^2 computed in integers, so the aggregate is
    // exact and identical for any worker count.
    const __int128 numerator =
        static_cast<__int128>(done) * static_cast<__int128>(sum_t2) -
        static_cast<__int128>(sum_t) * static_cast<__int128>(sum_t);
    result.v_t = static_cast<double>(numerator) /
                 (static_cast<double>(done) * static_cast<double>(done - 1));
  }
  result.early_stops = early;
  result.decoder = config.decoder.kind;
  return result;
}

std::vector<SnrResult> run_campaign(const CampaignConfig& config) {
  validate_config(config);
  if (config.snr_points_db.empty()) {
    throw std::invalid_argument("campaign: no SNR points");
  }
  std::vector<SnrResult> results;
  results.reserve(config.snr_points_db.size());
  for (const double snr : config.snr_points_db) {
    results.push_back(run_snr_point(config, snr));
  }
  return results;
}

void emit_results(const std::vector<SnrResult>& results, const std::string& path) {
  if (results.empty()) {
    throw std::invalid_argument("emit_results: nothing to write");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << "snr_db,codewords,frame_errors,fer,t_av,v_t,early_stops,decoder\n";
  for (const auto& r : results) {
    out << format_double(r.snr_db) << "," << r.codewords << ","
        << r.frame_errors << "," << format_double(r.fer) << ","
        << format_double(r.t_av) << "," << format_double(r.v_t) << ","
        << r.early_stops << "," << decoder_kind_name(r.decoder) << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::vector<SnrResult> parse_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open: " + path);
  }
  std::vector<SnrResult> results;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!saw_header) {
      if (line != "snr_db,codewords,frame_errors,fer,t_av,v_t,early_stops,decoder") {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": unexpected header");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 8 columns");
    }
    SnrResult r;
    try {
      r.snr_db = std::stod(fields[0]);
      r.codewords = std::stoull(fields[1]);
      r.frame_errors = std::stoull(fields[2]);
      r.fer = std::stod(fields[3]);
      r.t_av = std::stod(fields[4]);
      r.v_t = std::stod(fields[5]);
      r.early_stops = std::stoull(fields[6]);
      r.decoder = parse_decoder_kind(fields[7]);
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed row");
    }
    results.push_back(r);
  }
  if (results.empty()) {
    throw std::runtime_error(path + ": no result rows");
  }
  return results;
}

}  // namespace polarflip
