#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polarflip/calibration.hpp"
#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/flip_decoder.hpp"
#include "polarflip/simulation.hpp"

namespace {

using namespace polarflip;

std::uint64_t parse_hex_mask(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) {
    digits = digits.substr(2);
  }
  if (digits.empty()) {
    throw CLI::ValidationError("--crc-poly", "empty polynomial");
  }
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(digits, &used, 16);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--crc-poly", "not a hex value: " + text);
  }
  if (used != digits.size()) {
    throw CLI::ValidationError("--crc-poly", "not a hex value: " + text);
  }
  return value;
}

// Either a comma list ("2.0,2.25") or an inclusive range "start:step:stop".
std::vector<double> parse_snr_points(const std::string& text) {
  std::vector<double> points;
  if (text.find(':') != std::string::npos) {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3) {
      throw CLI::ValidationError("--snr", "expected start:step:stop");
    }
    if (!(step > 0.0)) {
      throw CLI::ValidationError("--snr", "step must be positive");
    }
    for (double v = start; v <= stop + step * 1e-9; v += step) {
      points.push_back(v);
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const std::string field =
          text.substr(start, comma == std::string::npos ? comma : comma - start);
      try {
        points.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--snr", "not a number: " + field);
      }
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
  }
  if (points.empty()) {
    throw CLI::ValidationError("--snr", "no SNR points given");
  }
  return points;
}

SnrType parse_snr_type(const std::string& text) {
  if (text == "ebn0") return SnrType::ebn0;
  if (text == "esn0") return SnrType::esn0;
  throw CLI::ValidationError("--snr-type", "expected ebn0 or esn0");
}

struct CodeOptions {
  std::uint32_t n = 1024;
  std::uint32_t k = 512;
  std::uint32_t crc_bits = 16;
  std::string crc_poly = "0x8005";
  double design_snr = 2.365;
  std::string snr_type = "ebn0";
  std::string frozen_file;
};

void add_code_options(CLI::App* cmd, CodeOptions& opts) {
  cmd->add_option("--n", opts.n, "Code length N (power of two)")
      ->capture_default_str();
  cmd->add_option("--k", opts.k, "Information bits per codeword")
      ->capture_default_str();
  cmd->add_option("--crc-bits", opts.crc_bits, "CRC length r")
      ->capture_default_str();
  cmd->add_option("--crc-poly", opts.crc_poly,
                  "CRC generator, hex mask of the r low-order coefficients")
      ->capture_default_str();
  cmd->add_option("--design-snr", opts.design_snr,
                  "Construction SNR in dB")
      ->capture_default_str();
  cmd->add_option("--snr-type", opts.snr_type, "SNR convention: ebn0 or esn0")
      ->capture_default_str();
  cmd->add_option("--frozen-file", opts.frozen_file,
                  "Import the frozen set from a file instead of constructing it");
}

CodeSpec build_spec(const CodeOptions& opts) {
  if (!opts.frozen_file.empty()) {
    return load_frozen_set(opts.frozen_file, opts.n, opts.crc_bits,
                           opts.design_snr);
  }
  return construct_frozen_set(opts.n, opts.k + opts.crc_bits, opts.design_snr,
                              opts.crc_bits, parse_snr_type(opts.snr_type));
}

CrcSpec build_crc(const CodeOptions& opts) {
  CrcSpec crc;
  crc.degree = opts.crc_bits;
  crc.polynomial = parse_hex_mask(opts.crc_poly);
  validate(crc);
  return crc;
}

int run_simulate(const CodeOptions& code, const std::string& snr_text,
                 const std::string& decoder_name, std::size_t max_trials,
                 std::size_t t_red, bool t_red_given, double c_param,
                 const std::string& threshold_file, std::uint64_t seed,
                 std::uint64_t min_errors, std::uint64_t max_codewords,
                 unsigned workers, const std::string& out_path) {
  CampaignConfig config;
  config.spec = build_spec(code);
  config.crc = build_crc(code);
  config.snr_type = parse_snr_type(code.snr_type);
  config.snr_points_db = parse_snr_points(snr_text);
  config.max_codewords = max_codewords;
  config.min_frame_errors = min_errors;
  config.seed = seed;
  config.workers = workers;

  config.decoder.kind = parse_decoder_kind(decoder_name);
  config.decoder.max_trials = max_trials;
  config.decoder.c_param = c_param;
  if (config.decoder.kind == DecoderKind::dscf_es) {
    if (threshold_file.empty()) {
      throw std::runtime_error(
          "decoder dscf-es needs --threshold-file for the gate thresholds");
    }
    config.thresholds = load_threshold_table(threshold_file);
    config.decoder.early_stop.enabled = true;
    config.decoder.early_stop.t_reduced =
        t_red_given ? t_red : config.thresholds->t_reduced;
  } else if (!threshold_file.empty()) {
    config.thresholds = load_threshold_table(threshold_file);
  }

  const std::vector<SnrResult> results = run_campaign(config);
  emit_results(results, out_path);
  std::printf("snr_db  codewords  frame_errors        fer       t_av        v_t  early_stops\n");
  for (const auto& r : results) {
    std::printf("%6.3f  %9llu  %12llu  %9.3e  %9.6f  %9.6f  %11llu\n", r.snr_db,
                static_cast<unsigned long long>(r.codewords),
                static_cast<unsigned long long>(r.frame_errors), r.fer, r.t_av,
                r.v_t, static_cast<unsigned long long>(r.early_stops));
  }
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int run_calibrate(const CodeOptions& code, const std::string& snr_text,
                  std::size_t max_trials, std::size_t t_red, double c_param,
                  std::uint64_t codewords, std::uint64_t seed, unsigned workers,
                  const std::string& out_path, const std::string& dist_path) {
  const CodeSpec spec = build_spec(code);
  const CrcSpec crc = build_crc(code);

  CalibrationConfig cal;
  cal.trial_budget = max_trials;
  cal.c_param = c_param;
  cal.codewords = codewords;
  cal.seed = seed;
  cal.workers = workers;

  const ThresholdBuildResult built =
      build_threshold_table(spec, crc, parse_snr_points(snr_text),
                            parse_snr_type(code.snr_type), cal, t_red);
  save_threshold_table(built.table, out_path);
  if (!dist_path.empty()) {
    save_distributions(built.distributions, dist_path);
  }
  std::printf("snr_db    phi_thr\n");
  for (const auto& row : built.table.rows) {
    std::printf("%6.3f  %9.5f\n", row.snr_db, row.phi_thr);
  }
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int run_construct(const CodeOptions& code, const std::string& out_path) {
  const CodeSpec spec = build_spec(code);
  save_frozen_set(spec, out_path);
  std::printf("N=%u k=%u r=%u frozen=%zu design_snr=%.3f dB\nwrote %s\n",
              spec.n_bits, spec.k_info, spec.r_crc, spec.frozen_set.size(),
              spec.design_snr_db, out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar-code flip decoding and Monte Carlo simulation"};
  app.require_subcommand(1);

  CodeOptions code;
  std::string snr_text = "2.25";
  std::string decoder_name = "dscf";
  std::size_t max_trials = 10;
  std::size_t t_red = 3;
  double c_param = 0.3;
  std::string threshold_file;
  std::uint64_t seed = 42;
  std::uint64_t min_errors = 100;
  std::uint64_t max_codewords = 100000;
  std::uint64_t cal_codewords = 100000;
  unsigned workers = 1;
  std::string out_path;
  std::string dist_path;

  CLI::App* simulate = app.add_subcommand("simulate", "Run an FER campaign");
  add_code_options(simulate, code);
  simulate->add_option("--snr", snr_text,
                       "SNR points: comma list or start:step:stop (dB)")
      ->capture_default_str();
  simulate->add_option("--decoder", decoder_name, "sc, scf, dscf, or dscf-es")
      ->capture_default_str();
  simulate->add_option("--max-trials", max_trials, "Flip trial budget T")
      ->capture_default_str();
  CLI::Option* t_red_opt =
      simulate->add_option("--t-red", t_red,
                           "Reduced budget when the gate fires "
                           "(default: value stored in the threshold file)");
  simulate->add_option("--c-param", c_param, "Metric constant c")
      ->capture_default_str();
  simulate->add_option("--threshold-file", threshold_file,
                       "Gate threshold table (required for dscf-es)");
  simulate->add_option("--seed", seed, "Campaign RNG seed")
      ->capture_default_str();
  simulate->add_option("--min-errors", min_errors,
                       "Stop an SNR point after this many frame errors (0 = never)")
      ->capture_default_str();
  simulate->add_option("--max-codewords", max_codewords,
                       "Cap on simulated codewords per SNR point")
      ->capture_default_str();
  simulate->add_option("--workers", workers, "Worker thread count")
      ->capture_default_str();
  simulate->add_option("--out", out_path, "Results CSV path")->required();

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Estimate gate thresholds per SNR");
  add_code_options(calibrate, code);
  calibrate->add_option("--snr", snr_text,
                        "SNR points: comma list or start:step:stop (dB)")
      ->capture_default_str();
  calibrate->add_option("--max-trials", max_trials, "Flip trial budget T")
      ->capture_default_str();
  calibrate->add_option("--t-red", t_red,
                        "Reduced budget to store in the table")
      ->capture_default_str();
  calibrate->add_option("--c-param", c_param, "Metric constant c")
      ->capture_default_str();
  calibrate->add_option("--codewords", cal_codewords,
                        "Sample size per SNR point")
      ->capture_default_str();
  calibrate->add_option("--seed", seed, "Calibration RNG seed")
      ->capture_default_str();
  calibrate->add_option("--workers", workers, "Worker thread count")
      ->capture_default_str();
  calibrate->add_option("--out", out_path, "Threshold table CSV path")
      ->required();
  calibrate->add_option("--dist-out", dist_path,
                        "Also dump the metric distribution CSV here");

  CLI::App* construct =
      app.add_subcommand("construct", "Build and save a frozen set");
  add_code_options(construct, code);
  construct->add_option("--out", out_path, "Frozen-set file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(code, snr_text, decoder_name, max_trials, t_red,
                          t_red_opt->count() > 0, c_param, threshold_file, seed,
                          min_errors, max_codewords, workers, out_path);
    }
    if (calibrate->parsed()) {
      return run_calibrate(code, snr_text, max_trials, t_red, c_param,
                           cal_codewords, seed, workers, out_path, dist_path);
    }
    if (construct->parsed()) {
      return run_construct(code, out_path);
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
