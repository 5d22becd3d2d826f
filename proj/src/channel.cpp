#include "polarflip/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polarflip {

ChannelConfig make_channel_config(double snr_db, double rate, SnrType snr_type) {
  if (!(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("channel: rate must lie in (0, 1]");
  }
  ChannelConfig config;
  config.snr_db = snr_db;
  config.snr_type = snr_type;
  config.rate = rate;
  const double scale = (snr_type == SnrType::ebn0) ? rate : 1.0;
  config.sigma_sq = 1.0 / (2.0 * scale * std::pow(10.0, snr_db / 10.0));
  config.llr_scale = 2.0 / config.sigma_sq;
  return config;
}

void modulate(const BitVector& x, LlrVector& symbols) {
  symbols.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    symbols[i] = x[i] ? -1.0 : 1.0;
  }
}

void transmit(const LlrVector& symbols, const ChannelConfig& config,
              const CounterRng& rng, LlrVector& received) {
  received.resize(symbols.size());
  const double sigma = std::sqrt(config.sigma_sq);
  double z0 = 0.0;
  double z1 = 0.0;
  for (std::size_t i = 0; i < symbols.size(); i += 2) {
    rng.gaussian_pair(i / 2, z0, z1);
    received[i] = symbols[i] + sigma * z0;
    if (i + 1 < symbols.size()) {
      received[i + 1] = symbols[i + 1] + sigma * z1;
    }
  }
}

void channel_llr(const LlrVector& received, const ChannelConfig& config,
                 LlrVector& alpha) {
  alpha.resize(received.size());
  for (std::size_t i = 0; i < received.size(); ++i) {
    alpha[i] = config.llr_scale * received[i];
  }
}

}  // namespace polarflip
