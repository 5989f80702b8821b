#include "manetsim/mobility.hpp"

#include <string>

#include "manetsim/errors.hpp"

namespace manetsim {

Position position_on(const MobilityLeg& leg, double time) {
  if (time <= leg.depart_time) return leg.from;
  if (time >= leg.arrive_time) return leg.to;
  const double f = (time - leg.depart_time) / (leg.arrive_time - leg.depart_time);
  return Position{leg.from.x + f * (leg.to.x - leg.from.x),
                  leg.from.y + f * (leg.to.y - leg.from.y)};
}

MobilityField::MobilityField(std::size_t node_count, double arena_width,
                             double arena_height, MobilityConfig cfg,
                             const std::map<NodeId, Position>& pinned,
                             RandomStream& rng)
    : width_(arena_width), height_(arena_height), cfg_(cfg) {
  legs_.resize(node_count);
  for (NodeId id = 0; id < node_count; ++id) {
    auto pin = pinned.find(id);
    const Position start =
        pin != pinned.end() ? pin->second : draw_point(rng);
    legs_[id] = MobilityLeg{start, start, 0.0, 0.0};
  }
  if (cfg_.model == MobilityModel::RandomWaypoint) {
    // First legs start moving immediately (no initial pause).
    for (NodeId id = 0; id < node_count; ++id) {
      const Position from = legs_[id].from;
      const Position to = draw_point(rng);
      const double speed = cfg_.v_min == cfg_.v_max
                               ? cfg_.v_min
                               : rng.uniform(cfg_.v_min, cfg_.v_max);
      const double travel = distance(from, to) / speed;
      legs_[id] = MobilityLeg{from, to, 0.0, travel};
    }
  }
}

Position MobilityField::position_at(NodeId node, double time) const {
  check_node(node);
  return position_on(legs_[node], time);
}

const MobilityLeg& MobilityField::leg(NodeId node) const {
  check_node(node);
  return legs_[node];
}

const MobilityLeg& MobilityField::advance_leg(NodeId node, double now,
                                              RandomStream& rng) {
  check_node(node);
  if (cfg_.model != MobilityModel::RandomWaypoint) {
    throw ContractViolation("advance_leg called for a non-waypoint node " +
                            std::to_string(node));
  }
  MobilityLeg& leg = legs_[node];
  const Position from = leg.to;  // node is at its waypoint now
  const Position to = draw_point(rng);
  const double speed = cfg_.v_min == cfg_.v_max
                           ? cfg_.v_min
                           : rng.uniform(cfg_.v_min, cfg_.v_max);
  const double depart = now + cfg_.pause;
  leg = MobilityLeg{from, to, depart, depart + distance(from, to) / speed};
  return leg;
}

std::vector<double> MobilityField::initial_arrivals() const {
  if (cfg_.model != MobilityModel::RandomWaypoint) return {};
  std::vector<double> out;
  out.reserve(legs_.size());
  for (const MobilityLeg& leg : legs_) out.push_back(leg.arrive_time);
  return out;
}

void MobilityField::pin(NodeId node, Position p, double now) {
  check_node(node);
  legs_[node] = MobilityLeg{p, p, now, now};
}

void MobilityField::check_node(NodeId node) const {
  if (node >= legs_.size()) {
    throw ContractViolation("unknown node id " + std::to_string(node));
  }
}

Position MobilityField::draw_point(RandomStream& rng) const {
  const double x = rng.uniform(0.0, width_);
  const double y = rng.uniform(0.0, height_);
  return Position{x, y};
}

}  // namespace manetsim
