#pragma once

#include <cstdint>
#include <limits>

namespace manetsim {

/// Abstract node identity. Nodes are dense ids 0..node_count-1.
using NodeId = std::uint32_t;

/// Frame recipient value meaning "all current neighbors".
inline constexpr NodeId kBroadcastId = std::numeric_limits<NodeId>::max();

/// AODV sequence number. Plain unsigned compare; runs never get close to
/// wrap-around, so RFC-style rollover arithmetic is not modeled.
using SeqNo = std::uint32_t;

/// Exact speed of light, m/s. Propagation delays and the free-space range
/// derivation both use this constant.
inline constexpr double kSpeedOfLight = 299'792'458.0;

struct Position {
  double x = 0.0;  ///< meters
  double y = 0.0;  ///< meters

  bool operator==(const Position&) const = default;
};

double distance(const Position& a, const Position& b);

}  // namespace manetsim
