#pragma once

#include <cstdint>
#include <vector>

#include "manetsim/errors.hpp"

namespace manetsim {

/// Terminal accounting of one run. Every generated packet lands in exactly
/// one bucket; in_flight_at_end covers frames still traveling and packets
/// still buffered when the horizon cuts.
struct RunMetrics {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_no_route = 0;
  std::uint64_t dropped_by_attacker = 0;
  std::uint64_t dropped_buffer = 0;
  std::uint64_t in_flight_at_end = 0;
  double pdr = 0.0;  ///< delivered / sent; 0 when sent == 0

  bool operator==(const RunMetrics&) const = default;
};

/// sent == delivered + dropped_no_route + dropped_by_attacker +
/// dropped_buffer + in_flight_at_end.
bool conservation_holds(const RunMetrics& m);

/// Throwing form; the experiment driver aborts on the first violation.
void require_conservation(const RunMetrics& m);

/// delivered / sent. Aborts when sent == 0 (undefined ratio).
double compute_pdr(const RunMetrics& m);

struct PdrSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> per_run;
};

/// Arithmetic mean and extremes of per-run PDR. Aborts on an empty list.
PdrSummary aggregate(const std::vector<RunMetrics>& runs);

}  // namespace manetsim
