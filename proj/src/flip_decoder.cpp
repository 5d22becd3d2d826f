#include "polarflip/flip_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polarflip {

namespace {

void select_smallest(std::vector<FlipList::Entry>& entries, std::size_t budget) {
  const auto less = [](const FlipList::Entry& a, const FlipList::Entry& b) {
    if (a.metric != b.metric) {
      return a.metric < b.metric;
    }
    return a.bit_index < b.bit_index;
  };
  const std::size_t keep = std::min(budget, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + keep, entries.end(), less);
  entries.resize(keep);
}

// Trial loop shared by the flip decoders. `initial` is the already-run first
// pass; it becomes the returned estimate when the budget allows no trials.
DecodeOutcome run_flip_trials(ScDecoder& decoder, const LlrVector& alpha_ch,
                              const CodeSpec& spec, const CrcSpec& crc,
                              const FlipList& flip_list, std::size_t budget,
                              const ScResult& initial) {
  DecodeOutcome out;
  const std::size_t trials = std::min(budget, flip_list.entries.size());
  ScResult trial_result;
  for (std::size_t t = 1; t <= trials; ++t) {
    const FlipSet flips(std::vector<std::size_t>{flip_list.entries[t - 1].bit_index});
    decoder.decode(alpha_ch, spec, flips, trial_result);
    BitVector payload = extract_payload(trial_result.u_hat, spec);
    const bool ok = crc_check(payload, crc);
    if (ok || t == trials) {
      out.payload_hat = std::move(payload);
      out.u_hat = std::move(trial_result.u_hat);
      out.trials_used = t;
      out.crc_ok = ok;
      return out;
    }
  }
  out.payload_hat = extract_payload(initial.u_hat, spec);
  out.u_hat = initial.u_hat;
  out.trials_used = 0;
  out.crc_ok = false;
  return out;
}

}  // namespace

FlipList scf_metrics(const LlrVector& alpha_dec, const CodeSpec& spec,
                     std::size_t trial_budget) {
  if (alpha_dec.size() != spec.n_bits) {
    throw std::invalid_argument("scf_metrics: alpha_dec length mismatch");
  }
  FlipList list;
  list.flavor = FlipList::Flavor::scf;
  list.entries.reserve(spec.info_set.size());
  for (const std::uint32_t i : spec.info_set) {
    list.entries.push_back({i, std::fabs(alpha_dec[i])});
  }
  select_smallest(list.entries, trial_budget);
  return list;
}

FlipList dscf_metrics(const LlrVector& alpha_dec, const CodeSpec& spec,
                      std::size_t trial_budget, double c) {
  if (alpha_dec.size() != spec.n_bits) {
    throw std::invalid_argument("dscf_metrics: alpha_dec length mismatch");
  }
  if (!(c > 0.0)) {
    throw std::invalid_argument("dscf_metrics: c must be positive");
  }
  FlipList list;
  list.flavor = FlipList::Flavor::dscf;
  list.entries.reserve(spec.info_set.size());
  double prefix = 0.0;  // (1/c) * sum of ln(1 + e^(-c |alpha|)) so far, j <= i
  for (const std::uint32_t i : spec.info_set) {
    const double magnitude = std::fabs(alpha_dec[i]);
    prefix += std::log1p(std::exp(-c * magnitude)) / c;
    list.entries.push_back({i, magnitude + prefix});
  }
  select_smallest(list.entries, trial_budget);
  return list;
}

double early_stop_metric(const FlipList& flip_list) {
  const std::size_t count = flip_list.entries.size();
  if (count < 2) {
    throw std::invalid_argument(
        "early_stop_metric: variance needs at least two candidates");
  }
  double sum = 0.0;
  for (const auto& entry : flip_list.entries) {
    sum += entry.metric;
  }
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (const auto& entry : flip_list.entries) {
    const double d = entry.metric - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(count - 1);
}

DecodeOutcome scf_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                         const CrcSpec& crc, const FlipList& flip_list,
                         std::size_t trial_budget, ScDecoder& scratch) {
  ScResult initial;
  if (std::min(trial_budget, flip_list.entries.size()) == 0) {
    scratch.decode(alpha_ch, spec, FlipSet(), initial);
  }
  return run_flip_trials(scratch, alpha_ch, spec, crc, flip_list, trial_budget,
                         initial);
}

DecodeOutcome scf_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                         const CrcSpec& crc, const FlipList& flip_list,
                         std::size_t trial_budget) {
  ScDecoder decoder(spec.n_bits);
  return scf_decode(alpha_ch, spec, crc, flip_list, trial_budget, decoder);
}

DecodeOutcome dscf_decode_with_early_stop(const LlrVector& alpha_ch,
                                          const CodeSpec& spec,
                                          const CrcSpec& crc,
                                          std::size_t trial_budget, double c,
                                          const EarlyStopConfig& es) {
  if (trial_budget < 1) {
    throw std::invalid_argument("dscf decode: trial budget must be >= 1");
  }
  DecoderParams params;
  params.kind = DecoderKind::dscf_es;
  params.max_trials = trial_budget;
  params.c_param = c;
  params.early_stop = es;
  return decode_received(alpha_ch, spec, crc, params);
}

std::string decoder_kind_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::sc:
      return "sc";
    case DecoderKind::scf:
      return "scf";
    case DecoderKind::dscf:
      return "dscf";
    case DecoderKind::dscf_es:
      return "dscf-es";
  }
  throw std::invalid_argument("decoder_kind_name: unknown kind");
}

DecoderKind parse_decoder_kind(const std::string& name) {
  if (name == "sc") return DecoderKind::sc;
  if (name == "scf") return DecoderKind::scf;
  if (name == "dscf") return DecoderKind::dscf;
  if (name == "dscf-es") return DecoderKind::dscf_es;
  throw std::invalid_argument("unknown decoder: " + name +
                              " (expected sc, scf, dscf, dscf-es)");
}

DecodeOutcome decode_received(const LlrVector& alpha_ch, const CodeSpec& spec,
                              const CrcSpec& crc, const DecoderParams& params,
                              ScDecoder& scratch) {
  const bool gated =
      params.kind == DecoderKind::dscf_es && params.early_stop.enabled;
  if (gated && params.early_stop.t_reduced > params.max_trials) {
    throw std::invalid_argument("decode_received: t_reduced exceeds max_trials");
  }

  ScResult initial;
  scratch.decode(alpha_ch, spec, FlipSet(), initial);
  BitVector payload = extract_payload(initial.u_hat, spec);
  const bool initial_ok = crc_check(payload, crc);

  if (params.kind == DecoderKind::sc || initial_ok) {
    DecodeOutcome out;
    out.payload_hat = std::move(payload);
    out.u_hat = std::move(initial.u_hat);
    out.trials_used = 0;
    out.crc_ok = initial_ok;
    return out;
  }

  FlipList flip_list;
  if (params.kind == DecoderKind::scf) {
    flip_list = scf_metrics(initial.alpha_dec, spec, params.max_trials);
  } else {
    flip_list =
        dscf_metrics(initial.alpha_dec, spec, params.max_trials, params.c_param);
  }

  std::optional<double> phi;
  if (params.kind != DecoderKind::scf && flip_list.entries.size() >= 2) {
    phi = early_stop_metric(flip_list);
  }
  std::size_t budget = params.max_trials;
  bool early_stopped = false;
  if (gated && phi.has_value() && *phi > params.early_stop.phi_threshold) {
    budget = params.early_stop.t_reduced;
    early_stopped = true;
  }

  DecodeOutcome out =
      run_flip_trials(scratch, alpha_ch, spec, crc, flip_list, budget, initial);
  out.phi = phi;
  out.early_stopped = early_stopped;
  return out;
}

DecodeOutcome decode_received(const LlrVector& alpha_ch, const CodeSpec& spec,
                              const CrcSpec& crc, const DecoderParams& params) {
  ScDecoder scratch(spec.n_bits);
  return decode_received(alpha_ch, spec, crc, params, scratch);
}

}  // namespace polarflip
