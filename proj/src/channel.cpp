#include "cocaco/channel.hpp"

#include <cmath>
#include <string>

#include "cocaco/errors.hpp"

namespace cocaco {

void validate(const ChannelParams& params) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("channel.") + what);
  };
  require(std::isfinite(params.bandwidth_hz) && params.bandwidth_hz > 0.0,
          "bandwidth_hz must be finite and > 0");
  require(std::isfinite(params.tx_power_w) && params.tx_power_w >= 0.0,
          "tx_power_w must be finite and >= 0");
  require(std::isfinite(params.channel_gain) && params.channel_gain >= 0.0,
          "channel_gain must be finite and >= 0");
  require(std::isfinite(params.noise_power_w) && params.noise_power_w > 0.0,
          "noise_power_w must be finite and > 0");
}

double uplink_rate(const ChannelParams& params) {
  validate(params);
  const double snr = params.tx_power_w * params.channel_gain * params.channel_gain /
                     params.noise_power_w;
  const double rate = params.bandwidth_hz * std::log2(1.0 + snr);
  if (!std::isfinite(rate)) throw ParameterError("channel.bandwidth_hz uplink rate overflows");
  return rate;
}

double shared_uplink_rate(const ChannelParams& params, std::size_t n_active) {
  if (n_active == 0) throw ParameterError("n_active must be >= 1");
  ChannelParams share = params;
  share.bandwidth_hz = params.bandwidth_hz / static_cast<double>(n_active);
  return uplink_rate(share);
}

}  // namespace cocaco
