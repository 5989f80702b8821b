#include "manetsim/radio.hpp"

#include <cmath>
#include <numbers>

namespace manetsim {

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

double free_space_loss_db(double distance_m, double frequency_hz) {
  const double lambda = kSpeedOfLight / frequency_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / lambda);
}

double compute_range(const RadioConfig& cfg) {
  if (cfg.range_override_m) return *cfg.range_override_m;
  const double allowed_loss_db =
      watts_to_dbm(cfg.tx_power_w) - cfg.rx_threshold_dbm;
  const double lambda = kSpeedOfLight / cfg.frequency_hz;
  // Loss grows monotonically with d, so the largest admissible d solves
  // 20*log10(4*pi*d/lambda) = allowed_loss exactly.
  return lambda / (4.0 * std::numbers::pi) *
         std::pow(10.0, allowed_loss_db / 20.0);
}

}  // namespace manetsim
