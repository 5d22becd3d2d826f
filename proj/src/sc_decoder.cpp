#include "polarflip/sc_decoder.hpp"

#include <stdexcept>

namespace polarflip {

BitVector combine_partial_sums(const BitVector& beta_l, const BitVector& beta_r) {
  if (beta_l.size() != beta_r.size()) {
    throw std::invalid_argument("combine_partial_sums: halves differ in length");
  }
  BitVector beta(2 * beta_l.size());
  for (std::size_t i = 0; i < beta_l.size(); ++i) {
    beta[i] = beta_l[i] ^ beta_r[i];
    beta[beta_l.size() + i] = beta_r[i];
  }
  return beta;
}

ScDecoder::ScDecoder(std::size_t block_length) : block_length_(block_length) {
  if (block_length == 0 || (block_length & (block_length - 1)) != 0) {
    throw std::invalid_argument("ScDecoder: block length must be a power of two");
  }
  depth_count_ = 0;
  for (std::size_t len = block_length; len >= 1; len >>= 1) {
    ++depth_count_;
  }
  alpha_.resize(depth_count_);
  beta_.resize(depth_count_);
  for (std::size_t d = 0; d < depth_count_; ++d) {
    alpha_[d].resize(block_length >> d);
    beta_[d].resize(block_length >> d);
  }
}

void ScDecoder::decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                       const FlipSet& flips, ScResult& out) {
  if (alpha_ch.size() != block_length_ || spec.n_bits != block_length_) {
    throw std::invalid_argument("ScDecoder: input length mismatch");
  }
  out.u_hat.resize(block_length_);
  out.alpha_dec.resize(block_length_);
  alpha_[0] = alpha_ch;
  recurse(0, 0, spec, flips, out);
}

void ScDecoder::recurse(std::size_t depth, std::size_t leaf_base,
                        const CodeSpec& spec, const FlipSet& flips,
                        ScResult& out) {
  const std::size_t len = block_length_ >> depth;
  if (len == 1) {
    const std::size_t i = leaf_base;
    const double alpha = alpha_[depth][0];
    out.alpha_dec[i] = alpha;
    std::uint8_t u = 0;
    if (!spec.frozen_mask[i]) {
      u = hard_decision(alpha);
      if (flips.contains(i)) {
        u ^= 1u;
      }
    }
    out.u_hat[i] = u;
    beta_[depth][0] = u;
    return;
  }

  const std::size_t half = len / 2;
  const LlrVector& a = alpha_[depth];
  LlrVector& child = alpha_[depth + 1];

  for (std::size_t j = 0; j < half; ++j) {
    child[j] = f_func(a[j], a[j + half]);
  }
  recurse(depth + 1, leaf_base, spec, flips, out);
  BitVector& b = beta_[depth];
  const BitVector& child_beta = beta_[depth + 1];
  for (std::size_t j = 0; j < half; ++j) {
    b[j] = child_beta[j];  // stash beta_l while the right subtree runs
  }

  for (std::size_t j = 0; j < half; ++j) {
    child[j] = g_func(a[j], a[j + half], b[j]);
  }
  recurse(depth + 1, leaf_base + half, spec, flips, out);
  for (std::size_t j = 0; j < half; ++j) {
    b[j] ^= child_beta[j];
    b[j + half] = child_beta[j];
  }
}

ScResult sc_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                   const FlipSet& flips) {
  ScDecoder decoder(spec.n_bits);
  ScResult out;
  decoder.decode(alpha_ch, spec, flips, out);
  return out;
}

}  // namespace polarflip
