#include "manetsim/metrics.hpp"

#include <algorithm>
#include <string>

namespace manetsim {

bool conservation_holds(const RunMetrics& m) {
  return m.sent == m.delivered + m.dropped_no_route + m.dropped_by_attacker +
                       m.dropped_buffer + m.in_flight_at_end;
}

void require_conservation(const RunMetrics& m) {
  if (conservation_holds(m)) return;
  throw ContractViolation(
      "packet conservation violated: sent=" + std::to_string(m.sent) +
      " delivered=" + std::to_string(m.delivered) +
      " dropped_no_route=" + std::to_string(m.dropped_no_route) +
      " dropped_by_attacker=" + std::to_string(m.dropped_by_attacker) +
      " dropped_buffer=" + std::to_string(m.dropped_buffer) +
      " in_flight_at_end=" + std::to_string(m.in_flight_at_end));
}

double compute_pdr(const RunMetrics& m) {
  if (m.sent == 0) {
    throw ContractViolation("pdr undefined: no packets were sent");
  }
  return static_cast<double>(m.delivered) / static_cast<double>(m.sent);
}

PdrSummary aggregate(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) {
    throw ContractViolation("aggregate: empty run list");
  }
  PdrSummary out;
  out.per_run.reserve(runs.size());
  for (const RunMetrics& m : runs) out.per_run.push_back(compute_pdr(m));
  out.min = *std::min_element(out.per_run.begin(), out.per_run.end());
  out.max = *std::max_element(out.per_run.begin(), out.per_run.end());
  double sum = 0.0;
  for (double p : out.per_run) sum += p;
  out.mean = sum / static_cast<double>(out.per_run.size());
  return out;
}

}  // namespace manetsim
