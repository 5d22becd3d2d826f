#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "polarflip/code_spec.hpp"
#include "polarflip/types.hpp"

namespace polarflip {

/// Min-sum check-node update: sign(x) sign(y) min(|x|, |y|).
inline double f_func(double x, double y) {
  const double m = std::min(std::fabs(x), std::fabs(y));
  return ((x < 0.0) == (y < 0.0)) ? m : -m;
}

/// Variable-node update with partial sum b: (1 - 2b) x + y.
inline double g_func(double x, double y, std::uint8_t b) {
  return b ? y - x : y + x;
}

/// Partial-sum combine: first half beta_l xor beta_r, second half beta_r.
BitVector combine_partial_sums(const BitVector& beta_l, const BitVector& beta_r);

/// Leaf indices whose hard decision is inverted during a decoding pass.
/// Order-1 flipping uses at most one index, but any set is accepted.
class FlipSet {
 public:
  FlipSet() = default;
  explicit FlipSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
  }

  bool contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }
  bool empty() const { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

struct ScResult {
  BitVector u_hat;      // length N, zero at frozen positions
  LlrVector alpha_dec;  // length N, decision LLR for every leaf
};

/// Depth-first successive-cancellation decoder. One instance holds the
/// per-depth scratch buffers, so a worker can reuse it across codewords;
/// decode() itself has no state that survives the call.
class ScDecoder {
 public:
  explicit ScDecoder(std::size_t block_length);

  void decode(const LlrVector& alpha_ch, const CodeSpec& spec,
              const FlipSet& flips, ScResult& out);

 private:
  void recurse(std::size_t depth, std::size_t leaf_base, const CodeSpec& spec,
               const FlipSet& flips, ScResult& out);

  std::size_t block_length_;
  std::size_t depth_count_;
  std::vector<LlrVector> alpha_;  // alpha_[d] holds the LLRs entering depth d
  std::vector<BitVector> beta_;   // beta_[d] holds the partial sums leaving depth d
};

/// One-shot convenience wrapper around ScDecoder.
ScResult sc_decode(const LlrVector& alpha_ch, const CodeSpec& spec,
                   const FlipSet& flips = FlipSet());

}  // namespace polarflip
