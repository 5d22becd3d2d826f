#include "pipeline.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "polarflip/rng.hpp"
#include "polarflip/sc_decoder.hpp"

namespace polarflip::detail {

void parallel_batch(std::uint64_t count, unsigned workers,
                    const std::function<void(std::uint64_t, unsigned)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      fn(i, 0);
    }
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&fn, w, count, workers] {
      for (std::uint64_t i = w; i < count; i += workers) {
        fn(i, w);
      }
    });
  }
  for (auto& t : threads) {
    t.join();
  }
}

CodewordRunner::CodewordRunner(const CodeSpec& spec, const CrcSpec& crc,
                               const ChannelConfig& channel,
                               const DecoderParams& params, std::uint64_t seed)
    : spec_(spec),
      crc_(crc),
      channel_(channel),
      params_(params),
      seed_(seed),
      decoder_(spec.n_bits) {}

void CodewordRunner::prepare(std::uint64_t codeword_index) {
  const CounterRng payload_rng(seed_, kPayloadStream, codeword_index);
  message_.resize(spec_.k_info);
  for (std::size_t i = 0; i < message_.size(); ++i) {
    message_[i] = payload_rng.bit(i);
  }
  payload_ = crc_append(message_, crc_);
  u_ = insert_payload(payload_, spec_);
  modulate(encode(u_, spec_), symbols_);
  const CounterRng noise_rng(seed_, kNoiseStream, codeword_index);
  transmit(symbols_, channel_, noise_rng, received_);
  channel_llr(received_, channel_, alpha_);
}

SimOutcome CodewordRunner::simulate(std::uint64_t codeword_index) {
  prepare(codeword_index);
  const DecodeOutcome outcome =
      decode_received(alpha_, spec_, crc_, params_, decoder_);
  SimOutcome out;
  out.trials = static_cast<std::uint32_t>(outcome.trials_used);
  out.error = !message_matches(outcome.payload_hat);
  out.early_stopped = outcome.early_stopped;
  return out;
}

bool CodewordRunner::message_matches(const BitVector& payload_hat) const {
  return std::equal(payload_hat.begin(), payload_hat.begin() + spec_.k_info,
                    message_.begin());
}

CalOutcome CodewordRunner::calibrate(std::uint64_t codeword_index) {
  prepare(codeword_index);
  ScResult initial;
  decoder_.decode(alpha_, spec_, FlipSet(), initial);
  const FlipList flip_list =
      dscf_metrics(initial.alpha_dec, spec_, params_.max_trials, params_.c_param);
  CalOutcome out;
  out.phi = early_stop_metric(flip_list);
  BitVector first_payload = extract_payload(initial.u_hat, spec_);
  if (crc_check(first_payload, crc_)) {
    out.trials = 0;
    out.match = message_matches(first_payload);
    return out;
  }
  const DecodeOutcome outcome =
      scf_decode(alpha_, spec_, crc_, flip_list, params_.max_trials, decoder_);
  out.trials = static_cast<std::uint32_t>(outcome.trials_used);
  out.match = message_matches(outcome.payload_hat);
  return out;
}

}  // namespace polarflip::detail
