#pragma once

#include <optional>

#include "manetsim/types.hpp"

namespace manetsim {

/// Disk-model channel parameters. The communication range is derived from
/// transmit power and reception threshold under free-space path loss, or
/// pinned directly with range_override_m.
struct RadioConfig {
  double tx_power_w = 1e-4;
  double rx_threshold_dbm = -95.0;
  double frequency_hz = 2.4e9;
  double bitrate_bps = 1e6;
  std::optional<double> range_override_m;

  bool operator==(const RadioConfig&) const = default;
};

double watts_to_dbm(double watts);

/// Free-space path loss at distance d (meters), in dB.
double free_space_loss_db(double distance_m, double frequency_hz);

/// Largest d such that tx_power(dBm) - 20*log10(4*pi*d/lambda) >= threshold.
/// Returns range_override_m verbatim when set.
double compute_range(const RadioConfig& cfg);

}  // namespace manetsim
