#pragma once

#include <cstddef>

namespace cocaco {

/// Physical-layer parameters of the device-to-edge wireless uplink.
///
/// `channel_gain` is an amplitude; the rate formula squares it.
struct ChannelParams {
  double bandwidth_hz = 0.0;
  double tx_power_w = 0.0;
  double channel_gain = 0.0;
  double noise_power_w = 0.0;

  bool operator==(const ChannelParams&) const = default;
};

/// Throws ParameterError unless B > 0, p >= 0, h >= 0, noise > 0 and all finite.
void validate(const ChannelParams& params);

/// Shannon uplink rate B * log2(1 + p*h^2 / noise), in bits/second.
double uplink_rate(const ChannelParams& params);

/// Uplink rate seen by one of `n_active` concurrent uploaders when the
/// bandwidth is split equally among them.
double shared_uplink_rate(const ChannelParams& params, std::size_t n_active);

}  // namespace cocaco
