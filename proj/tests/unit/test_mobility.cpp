#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/random.hpp"
#include "manetsim/simulation.hpp"

using namespace manetsim;
using namespace testutil;

namespace {

MobilityField make_field(std::size_t n, MobilityConfig cfg, std::uint64_t seed,
                         const std::map<NodeId, Position>& pins = {}) {
  RandomStream rng(seed, StreamId::Mobility);
  return MobilityField(n, 600.0, 600.0, cfg, pins, rng);
}

}  // namespace

TEST_CASE("position_on interpolates linearly between the endpoints") {
  const MobilityLeg leg{Position{0, 0}, Position{100, 0}, 0.0, 10.0};
  CHECK(position_on(leg, 5.0) == Position{50.0, 0.0});
  CHECK(position_on(leg, 2.5) == Position{25.0, 0.0});
  CHECK(position_on(leg, 0.0) == leg.from);
  CHECK(position_on(leg, 10.0) == leg.to);
  CHECK(position_on(leg, -3.0) == leg.from);
  CHECK(position_on(leg, 42.0) == leg.to);

  const MobilityLeg held{Position{10, 20}, Position{70, 100}, 4.0, 8.0};
  CHECK(position_on(held, 1.0) == held.from);
  CHECK(position_on(held, 6.0) == Position{40.0, 60.0});
}

TEST_CASE("static nodes hold their pins forever") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::Static;
  std::map<NodeId, Position> pins{{0, Position{12, 34}}, {1, Position{56, 78}}};
  MobilityField field = make_field(2, cfg, 7, pins);
  for (double t : {0.0, 1.0, 599.9, 1e6}) {
    CHECK(field.position_at(0, t) == Position{12, 34});
    CHECK(field.position_at(1, t) == Position{56, 78});
  }
  CHECK(field.initial_arrivals().empty());
  RandomStream rng(7, StreamId::Mobility);
  CHECK_THROWS_AS(field.advance_leg(0, 1.0, rng), ContractViolation);
}

TEST_CASE("unpinned static placement replays the stream draws") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::Static;
  MobilityField field = make_field(3, cfg, 11);

  RandomStream replay(11, StreamId::Mobility);
  for (NodeId id = 0; id < 3; ++id) {
    const double x = replay.uniform(0.0, 600.0);
    const double y = replay.uniform(0.0, 600.0);
    CHECK(field.position_at(id, 0.0) == Position{x, y});
  }
}

TEST_CASE("waypoint initialization draws placements then first legs") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::RandomWaypoint;
  cfg.v_min = 1.0;
  cfg.v_max = 10.0;
  MobilityField field = make_field(3, cfg, 5);

  RandomStream replay(5, StreamId::Mobility);
  Position starts[3];
  for (auto& s : starts) {
    const double x = replay.uniform(0.0, 600.0);
    const double y = replay.uniform(0.0, 600.0);
    s = Position{x, y};
  }
  for (NodeId id = 0; id < 3; ++id) {
    const double tx = replay.uniform(0.0, 600.0);
    const double ty = replay.uniform(0.0, 600.0);
    const double speed = replay.uniform(1.0, 10.0);
    const MobilityLeg& leg = field.leg(id);
    CHECK(leg.from == starts[id]);
    CHECK(leg.to == Position{tx, ty});
    CHECK(leg.depart_time == 0.0);
    CHECK(leg.arrive_time ==
          doctest::Approx(distance(starts[id], Position{tx, ty}) / speed)
              .epsilon(1e-15));
  }
  const auto arrivals = field.initial_arrivals();
  REQUIRE(arrivals.size() == 3);
  for (NodeId id = 0; id < 3; ++id) {
    CHECK(arrivals[id] == field.leg(id).arrive_time);
  }
}

TEST_CASE("degenerate speed interval skips the speed draw") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::RandomWaypoint;
  cfg.v_min = 5.0;
  cfg.v_max = 5.0;
  MobilityField field = make_field(2, cfg, 9);

  RandomStream replay(9, StreamId::Mobility);
  Position starts[2];
  for (auto& s : starts) {
    const double x = replay.uniform(0.0, 600.0);
    const double y = replay.uniform(0.0, 600.0);
    s = Position{x, y};
  }
  for (NodeId id = 0; id < 2; ++id) {
    const double tx = replay.uniform(0.0, 600.0);
    const double ty = replay.uniform(0.0, 600.0);
    const MobilityLeg& leg = field.leg(id);
    CHECK(leg.to == Position{tx, ty});
    // Exactly v = 5, no rounding through a sampled speed.
    CHECK(leg.arrive_time * 5.0 ==
          doctest::Approx(distance(leg.from, leg.to)).epsilon(1e-15));
  }
}

TEST_CASE("advance_leg pauses, then draws the next waypoint and speed") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::RandomWaypoint;
  cfg.v_min = 2.0;
  cfg.v_max = 8.0;
  cfg.pause = 10.0;
  MobilityField field = make_field(1, cfg, 3);

  // Burn the five init draws (placement x,y + first leg x,y,speed); the
  // engine advances once per uniform() regardless of bounds.
  RandomStream replay(3, StreamId::Mobility);
  for (int i = 0; i < 5; ++i) replay.uniform(0.0, 1.0);

  const Position waypoint = field.leg(0).to;
  const double now = field.leg(0).arrive_time;
  RandomStream live(3, StreamId::Mobility);
  for (int i = 0; i < 5; ++i) live.uniform(0.0, 1.0);

  const MobilityLeg& next = field.advance_leg(0, now, live);
  const double ex = replay.uniform(0.0, 600.0);
  const double ey = replay.uniform(0.0, 600.0);
  const double espeed = replay.uniform(2.0, 8.0);
  CHECK(next.from == waypoint);
  CHECK(next.to == Position{ex, ey});
  CHECK(next.depart_time == now + 10.0);
  CHECK(next.arrive_time ==
        doctest::Approx(next.depart_time +
                        distance(waypoint, Position{ex, ey}) / espeed)
            .epsilon(1e-15));
  // Pause holds the node at the waypoint.
  CHECK(field.position_at(0, now + 5.0) == waypoint);
}

TEST_CASE("waypoints stay inside the arena and average to its center") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::RandomWaypoint;
  cfg.v_min = 1.0;
  cfg.v_max = 10.0;
  cfg.pause = 0.1;
  MobilityField walk = make_field(1, cfg, 22);
  RandomStream wrng(22, StreamId::Mobility);
  for (int i = 0; i < 4; ++i) wrng.uniform(0.0, 600.0);
  wrng.uniform(1.0, 10.0);

  double sx = 0.0;
  double sy = 0.0;
  double now = walk.leg(0).arrive_time;
  const int kLegs = 4000;
  for (int i = 0; i < kLegs; ++i) {
    const MobilityLeg& leg = walk.advance_leg(0, now, wrng);
    CHECK(leg.to.x >= 0.0);
    CHECK(leg.to.x <= 600.0);
    CHECK(leg.to.y >= 0.0);
    CHECK(leg.to.y <= 600.0);
    CHECK(leg.arrive_time > leg.depart_time);
    sx += leg.to.x;
    sy += leg.to.y;
    now = leg.arrive_time;
  }
  CHECK(sx / kLegs == doctest::Approx(300.0).epsilon(0.05));
  CHECK(sy / kLegs == doctest::Approx(300.0).epsilon(0.05));
}

TEST_CASE("pin freezes a node mid-run") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::RandomWaypoint;
  MobilityField field = make_field(1, cfg, 13);
  field.pin(0, Position{111, 222}, 50.0);
  CHECK(field.position_at(0, 50.0) == Position{111, 222});
  CHECK(field.position_at(0, 5000.0) == Position{111, 222});
}

TEST_CASE("unknown node ids are rejected") {
  MobilityConfig cfg;
  cfg.model = MobilityModel::Static;
  MobilityField field = make_field(2, cfg, 1);
  CHECK_THROWS_AS(field.position_at(2, 0.0), ContractViolation);
  CHECK_THROWS_AS(field.leg(99), ContractViolation);
  CHECK_THROWS_AS(field.pin(2, Position{0, 0}, 0.0), ContractViolation);
}

TEST_CASE("a full run keeps every node inside the arena") {
  ScenarioConfig cfg;
  cfg.node_count = 10;
  cfg.arena_width = 400.0;
  cfg.arena_height = 300.0;
  cfg.duration = 120.0;
  cfg.mobility.v_min = 1.0;
  cfg.mobility.v_max = 20.0;
  cfg.mobility.pause = 2.0;
  cfg.traffic.start = 1e9;
  Simulation sim(cfg, 17);
  for (double t = 0.0; t <= 120.0; t += 7.3) {
    sim.run_until(t);
    for (NodeId id = 0; id < cfg.node_count; ++id) {
      const Position p = sim.position_of(id);
      CHECK(p.x >= 0.0);
      CHECK(p.x <= 400.0);
      CHECK(p.y >= 0.0);
      CHECK(p.y <= 300.0);
    }
  }
}
