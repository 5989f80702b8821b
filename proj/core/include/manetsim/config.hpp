#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/aodv.hpp"
#include "manetsim/blackhole.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/radio.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

/// One constant-bit-rate-style flow: packets from source to destination with
/// uniform inter-arrival and exponential sizes.
struct TrafficFlow {
  NodeId source = 1;
  NodeId destination = 4;

  bool operator==(const TrafficFlow&) const = default;
};

struct TrafficConfig {
  std::vector<TrafficFlow> flows = {TrafficFlow{}};
  double start = 0.0;              ///< first packet at start + first draw
  double interarrival_lo = 0.1;    ///< seconds
  double interarrival_hi = 0.11;   ///< seconds, exclusive
  double mean_packet_bits = 1024;  ///< exponential mean

  bool operator==(const TrafficConfig&) const = default;
};

struct AttackerSetup {
  std::uint32_t count = 0;
  AttackerConfig behavior;
  std::vector<NodeId> node_ids;  ///< explicit placement; empty = random

  bool operator==(const AttackerSetup&) const = default;
};

/// Full experiment description: one run's parameters plus the seed list and
/// the optional sweep axes the experiment driver expands.
struct ScenarioConfig {
  std::uint32_t node_count = 46;
  double arena_width = 600.0;
  double arena_height = 600.0;
  double duration = 600.0;
  RadioConfig radio;
  MobilityConfig mobility;
  AodvConfig aodv;
  AttackerSetup attackers;
  TrafficConfig traffic;
  std::map<NodeId, Position> pinned_positions;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<std::uint32_t> sweep_attackers;  ///< empty = scalar config
  std::vector<double> sweep_speeds;            ///< empty = scalar config

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses the dotted-key config format ("aodv.rreq_retries = 2", '#'
/// comments). Absent keys keep their defaults. Unknown keys and every
/// invariant violation are reported together in one ConfigError.
ScenarioConfig parse_config(const std::string& path);

/// Same, from config text (tests, round trips).
ScenarioConfig parse_config_text(const std::string& text);

/// Serializes the full effective config as parseable dotted-key text.
/// parse_config_text(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& cfg);

/// Collects every invariant violation; empty means valid.
std::vector<std::string> validate(const ScenarioConfig& cfg);

/// Throws ConfigError listing all violations unless valid.
void require_valid(const ScenarioConfig& cfg);

}  // namespace manetsim
