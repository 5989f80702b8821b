#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "manetsim/aodv.hpp"
#include "manetsim/blackhole.hpp"
#include "manetsim/config.hpp"
#include "manetsim/event.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/random.hpp"
#include "manetsim/routing.hpp"

namespace manetsim {

/// One deterministic run: global clock, event queue, seeded random streams,
/// node mobility, per-node AODV state, attacker behavior and metrics.
/// Strictly single-threaded; separate runs share nothing mutable.
class Simulation {
 public:
  /// Builds the run for a scalar config (sweep axes ignored) and the given
  /// seed: selects attackers, places nodes, schedules the initial events.
  Simulation(const ScenarioConfig& config, std::uint64_t seed);

  /// Streams one line per processed event to `out` (nullptr disables).
  void set_trace(std::ostream* out) { trace_ = out; }

  /// Runs to the horizon and finalizes metrics.
  const RunMetrics& run();

  /// Processes a single event. False once the run has ended.
  bool step();

  /// Processes events with time <= t (and before the horizon). For scripted
  /// scenarios and tests; finish with run().
  void run_until(double t);

  /// Enqueues an event; scheduling before the current clock aborts.
  void schedule(double time, EventPayload payload);

  // --- radio layer ---

  /// All other nodes within communication range at `time` (inclusive
  /// boundary), ascending id.
  std::vector<NodeId> neighbors(NodeId node, double time) const;

  /// Delivers the frame: broadcast fans out to every current neighbor;
  /// unicast to an out-of-range recipient raises the sender's LinkFailure
  /// handling synchronously. Reachability is sampled now and frozen.
  void transmit(const Frame& frame);

  double range() const { return range_; }

  // --- accessors used by the protocol layer, the CLI and tests ---

  double now() const { return clock_; }
  double duration() const { return cfg_.duration; }
  const ScenarioConfig& config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }
  RandomStream& rng(StreamId id) { return rng_.stream(id); }

  AodvNode& node(NodeId id);
  const AodvNode& node(NodeId id) const;
  Position position_of(NodeId id) const;
  void move_node(NodeId id, Position p);  ///< scripted re-pin at now()

  bool is_attacker(NodeId id) const;
  const std::vector<NodeId>& attacker_ids() const { return attacker_ids_; }

  const RunMetrics& metrics() const { return metrics_; }
  const EventQueue& queue() const { return queue_; }

  // --- metrics hooks (single-owner counters) ---
  void count_dropped_no_route(std::uint64_t n = 1) {
    metrics_.dropped_no_route += n;
  }
  void count_dropped_buffer() { ++metrics_.dropped_buffer; }

  /// CSV rows for the optional routing-table dump:
  /// node_id,destination,next_hop,hop_count,dest_seq,valid
  std::string dump_routing_tables() const;

 private:
  void select_attackers();
  void schedule_initial_events();
  void dispatch(const Event& event);
  void on_frame_delivery(const FrameDeliveryPayload& p);
  void on_traffic_generation(const TrafficGenerationPayload& p);
  void on_waypoint_arrival(const WaypointArrivalPayload& p);
  void on_timer(const TimerExpiryPayload& p);
  void emit_fake_rreqs(NodeId attacker);
  void attacker_handle_rreq(NodeId attacker, const Rreq& rreq,
                            NodeId previous_hop);
  void finalize_metrics();

  ScenarioConfig cfg_;
  std::uint64_t seed_;
  RandomBundle rng_;
  EventQueue queue_;
  double clock_ = 0.0;
  bool ended_ = false;
  bool finalized_ = false;
  double range_ = 0.0;
  std::unique_ptr<MobilityField> mobility_;
  std::vector<AodvNode> nodes_;
  std::vector<std::optional<AttackerState>> attackers_;
  std::vector<NodeId> attacker_ids_;
  RunMetrics metrics_;
  std::uint64_t next_packet_id_ = 0;
  std::ostream* trace_ = nullptr;
};

}  // namespace manetsim
