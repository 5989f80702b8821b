#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "manetsim/errors.hpp"
#include "manetsim/event.hpp"
#include "manetsim/random.hpp"
#include "manetsim/simulation.hpp"

using namespace manetsim;
using namespace testutil;

TEST_CASE("queue orders by time, then insertion order") {
  EventQueue q;
  q.push(5.0, SimulationEndPayload{});                // seq 0
  q.push(5.0, TrafficGenerationPayload{1});           // seq 1
  q.push(3.0, WaypointArrivalPayload{7});             // seq 2
  CHECK(q.size() == 3);

  auto first = q.pop();
  REQUIRE(first.has_value());
  CHECK(first->time == 3.0);
  CHECK(first->seq == 2);
  CHECK(first->kind() == EventKind::WaypointArrival);

  auto second = q.pop();
  REQUIRE(second.has_value());
  CHECK(second->time == 5.0);
  CHECK(second->seq == 0);
  CHECK(second->kind() == EventKind::SimulationEnd);

  auto third = q.pop();
  REQUIRE(third.has_value());
  CHECK(third->seq == 1);
  CHECK(q.pop() == std::nullopt);
  CHECK(q.empty());
}

TEST_CASE("peek matches the next pop without consuming") {
  EventQueue q;
  CHECK(q.peek() == nullptr);
  q.push(2.0, SimulationEndPayload{});
  q.push(1.0, WaypointArrivalPayload{0});
  const Event* top = q.peek();
  REQUIRE(top != nullptr);
  CHECK(top->time == 1.0);
  CHECK(q.size() == 2);
  auto popped = q.pop();
  REQUIRE(popped.has_value());
  CHECK(popped->time == 1.0);
}

TEST_CASE("equal-time dequeue order equals insertion order for any mix") {
  // Oracle: stable sort by time over the pushed sequence.
  RandomStream rng(2024, StreamId::Traffic);
  for (int round = 0; round < 20; ++round) {
    EventQueue q;
    struct Pushed {
      double time;
      std::size_t index;
    };
    std::vector<Pushed> pushed;
    for (std::size_t i = 0; i < 200; ++i) {
      const double t = static_cast<double>(rng.below(5));
      pushed.push_back({t, i});
      q.push(t, TrafficGenerationPayload{i});
    }
    std::vector<Pushed> expected = pushed;
    std::stable_sort(expected.begin(), expected.end(),
                     [](const Pushed& a, const Pushed& b) {
                       return a.time < b.time;
                     });
    for (const Pushed& e : expected) {
      auto got = q.pop();
      REQUIRE(got.has_value());
      CHECK(got->time == e.time);
      CHECK(std::get<TrafficGenerationPayload>(got->payload).flow_index ==
            e.index);
    }
    CHECK(q.empty());
  }
}

TEST_CASE("trace lines are tab-separated time, seq, kind, summary") {
  EventQueue q;
  q.push(1.5, TrafficGenerationPayload{3});
  auto e = q.pop();
  REQUIRE(e.has_value());
  CHECK(e->trace_line() == "1.500000000\t0\tTrafficGeneration\tflow=3");

  Event end{0.25, 7, SimulationEndPayload{}};
  CHECK(end.trace_line() == "0.250000000\t7\tSimulationEnd\tend");

  Event timer{2.0, 1, TimerExpiryPayload{RreqRetryTimer{4, 9, 2}}};
  CHECK(timer.trace_line() ==
        "2.000000000\t1\tTimerExpiry\trreq_retry node=4 dst=9 round=2");

  DataPacket pkt;
  pkt.id = 12;
  pkt.source = 0;
  pkt.destination = 2;
  pkt.size_bits = 1024.0;
  Event fd{0.5, 3,
           FrameDeliveryPayload{make_data_frame(0, 1, pkt), 1}};
  CHECK(fd.trace_line() ==
        "0.500000000\t3\tFrameDelivery\tdata id=12 src=0 dst=2 bits=1024 "
        "from=0 to=1");
}

TEST_CASE("scheduling in the past aborts, at the current instant is fine") {
  ScenarioConfig cfg = pinned_static(line_positions(2, 100.0), 200.0);
  Simulation sim(cfg, 1);
  CHECK_THROWS_AS(sim.schedule(-0.001, SimulationEndPayload{}),
                  ContractViolation);
  sim.schedule(0.0, WaypointArrivalPayload{0});  // now() == 0
  sim.schedule(1.0, WaypointArrivalPayload{0});
}

TEST_CASE("identical runs produce identical metrics and traces") {
  ScenarioConfig cfg;
  cfg.node_count = 20;
  cfg.arena_width = 400.0;
  cfg.arena_height = 400.0;
  cfg.duration = 30.0;
  cfg.attackers.count = 2;

  std::ostringstream trace_a;
  std::ostringstream trace_b;
  Simulation a(cfg, 5);
  a.set_trace(&trace_a);
  Simulation b(cfg, 5);
  b.set_trace(&trace_b);
  const RunMetrics ma = a.run();
  const RunMetrics mb = b.run();
  CHECK(ma == mb);
  CHECK(trace_a.str() == trace_b.str());
  CHECK_FALSE(trace_a.str().empty());
}

TEST_CASE("processed event times never decrease nor pass the horizon") {
  ScenarioConfig cfg;
  cfg.node_count = 15;
  cfg.arena_width = 400.0;
  cfg.arena_height = 400.0;
  cfg.duration = 20.0;

  std::ostringstream trace;
  Simulation sim(cfg, 9);
  sim.set_trace(&trace);
  sim.run();

  double last = 0.0;
  int parsed = 0;
  for (const std::string& line : lines_of(trace.str())) {
    const double t = std::stod(line.substr(0, line.find('\t')));
    CHECK(t >= last);
    CHECK(t <= cfg.duration);
    last = t;
    ++parsed;
  }
  CHECK(parsed > 100);
}

TEST_CASE("horizon tie: the end event wins, later same-time frames stay") {
  ScenarioConfig cfg = pinned_static(line_positions(2, 100.0), 200.0);
  cfg.duration = 10.0;
  Simulation sim(cfg, 1);
  DataPacket pkt;
  pkt.id = 0;
  pkt.source = 0;
  pkt.destination = 1;
  pkt.size_bits = 512.0;
  sim.schedule(10.0, FrameDeliveryPayload{make_data_frame(0, 1, pkt), 1});
  sim.run();
  CHECK(sim.metrics().delivered == 0);
  CHECK(sim.metrics().in_flight_at_end == 1);
}

TEST_CASE("frames before the horizon are processed") {
  ScenarioConfig cfg = pinned_static(line_positions(2, 100.0), 200.0);
  cfg.duration = 10.0;
  Simulation sim(cfg, 1);
  DataPacket pkt;
  pkt.id = 0;
  pkt.source = 0;
  pkt.destination = 1;
  pkt.size_bits = 512.0;
  sim.schedule(9.999, FrameDeliveryPayload{make_data_frame(0, 1, pkt), 1});
  sim.run();
  CHECK(sim.metrics().delivered == 1);
  CHECK(sim.metrics().in_flight_at_end == 0);
}

TEST_CASE("run_until stops at the requested instant") {
  ScenarioConfig cfg = pinned_static(line_positions(3, 150.0), 200.0);
  cfg.traffic.start = 0.0;
  cfg.duration = 30.0;
  Simulation sim(cfg, 3);
  sim.run_until(5.0);
  CHECK(sim.now() <= 5.0);
  const std::uint64_t sent_at_5 = sim.metrics().sent;
  CHECK(sent_at_5 > 10);
  sim.run();
  CHECK(sim.metrics().sent > sent_at_5);
}
