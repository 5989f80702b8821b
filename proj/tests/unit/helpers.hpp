#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/simulation.hpp"

namespace testutil {

using namespace manetsim;

/// Static topology with every node pinned. Flow 0 -> last node is configured
/// but silent (start far beyond any horizon) so tests can drive traffic
/// explicitly; override traffic.start for natural generation.
inline ScenarioConfig pinned_static(const std::vector<Position>& positions,
                                    double range) {
  ScenarioConfig cfg;
  cfg.node_count = static_cast<std::uint32_t>(positions.size());
  cfg.arena_width = 20000.0;
  cfg.arena_height = 20000.0;
  cfg.duration = 60.0;
  cfg.mobility.model = MobilityModel::Static;
  cfg.radio.range_override_m = range;
  for (NodeId i = 0; i < positions.size(); ++i) {
    cfg.pinned_positions[i] = positions[i];
  }
  cfg.traffic.flows = {
      TrafficFlow{0, static_cast<NodeId>(positions.size() - 1)}};
  cfg.traffic.start = 1e9;
  return cfg;
}

/// Evenly spaced horizontal line starting at the origin.
inline std::vector<Position> line_positions(std::size_t n, double spacing) {
  std::vector<Position> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Position{static_cast<double>(i) * spacing, 0.0});
  }
  return out;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

inline int count_containing(const std::string& text,
                            const std::string& needle) {
  int n = 0;
  for (const std::string& line : lines_of(text)) {
    if (line.find(needle) != std::string::npos) ++n;
  }
  return n;
}

}  // namespace testutil
