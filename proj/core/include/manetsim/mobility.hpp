#pragma once

#include <map>
#include <vector>

#include "manetsim/random.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

enum class MobilityModel { Static, RandomWaypoint };

struct MobilityConfig {
  MobilityModel model = MobilityModel::RandomWaypoint;
  double v_min = 1.0;   ///< m/s, must be > 0 for RandomWaypoint
  double v_max = 10.0;  ///< m/s
  double pause = 10.0;  ///< seconds at each waypoint

  bool operator==(const MobilityConfig&) const = default;
};

/// One random-waypoint leg: hold at `from` until depart_time, then move in a
/// straight line at constant speed, reaching `to` at arrive_time.
struct MobilityLeg {
  Position from;
  Position to;
  double depart_time = 0.0;
  double arrive_time = 0.0;
};

/// Position along a leg at `time`: `from` until depart_time, linear
/// interpolation in between, `to` from arrive_time on.
Position position_on(const MobilityLeg& leg, double time);

/// Positions every node at every instant inside the rectangular arena.
///
/// Initialization draws, all from the Mobility stream in ascending node id:
/// first a placement (x, y) per unpinned node, then a first leg (x, y, speed)
/// per RandomWaypoint node with no initial pause. Each WaypointArrival event
/// materializes the next leg via advance_leg().
class MobilityField {
 public:
  MobilityField(std::size_t node_count, double arena_width,
                double arena_height, MobilityConfig cfg,
                const std::map<NodeId, Position>& pinned, RandomStream& rng);

  /// Exact position at `time`; `time` must not precede the node's current
  /// leg. Unknown node ids abort.
  Position position_at(NodeId node, double time) const;

  /// Draws the next waypoint and speed for `node`, starting after the
  /// configured pause at `now`. Returns the new leg; the caller schedules the
  /// WaypointArrival at leg.arrive_time. Only valid for RandomWaypoint.
  const MobilityLeg& advance_leg(NodeId node, double now, RandomStream& rng);

  /// First-leg arrival times, index-aligned with node ids; empty for Static.
  /// Used to schedule the initial WaypointArrival events.
  std::vector<double> initial_arrivals() const;

  /// Re-pins a node at a fixed position from `now` on (scripted topology
  /// changes; also the mutation hook scenario tests use).
  void pin(NodeId node, Position p, double now);

  MobilityModel model() const { return cfg_.model; }
  std::size_t node_count() const { return legs_.size(); }
  const MobilityLeg& leg(NodeId node) const;

 private:
  void check_node(NodeId node) const;
  Position draw_point(RandomStream& rng) const;

  double width_;
  double height_;
  MobilityConfig cfg_;
  std::vector<MobilityLeg> legs_;  // Static nodes: from == to, never advanced
};

}  // namespace manetsim
