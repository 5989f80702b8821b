#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "manetsim/messages.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

enum class EventKind {
  FrameDelivery,
  TimerExpiry,
  TrafficGeneration,
  WaypointArrival,
  SimulationEnd,
};

const char* to_string(EventKind kind);

struct FrameDeliveryPayload {
  Frame frame;
  NodeId recipient = 0;  ///< resolved per-neighbor for broadcasts
};

/// RREQ retry timer. `round` identifies the discovery attempt so stale
/// timers can be ignored after the discovery completed or was superseded.
struct RreqRetryTimer {
  NodeId node = 0;
  NodeId destination = 0;
  std::uint64_t round = 0;
};

/// Periodic forged-RREQ emission for FakeRreq-mode attackers.
struct FakeRreqTimer {
  NodeId attacker = 0;
};

struct TimerExpiryPayload {
  std::variant<RreqRetryTimer, FakeRreqTimer> timer;
};

struct TrafficGenerationPayload {
  std::size_t flow_index = 0;
};

struct WaypointArrivalPayload {
  NodeId node = 0;
};

struct SimulationEndPayload {};

using EventPayload =
    std::variant<FrameDeliveryPayload, TimerExpiryPayload,
                 TrafficGenerationPayload, WaypointArrivalPayload,
                 SimulationEndPayload>;

/// Timestamped simulator action. Dequeue order: non-decreasing time,
/// ascending insertion seq on ties.
struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventPayload payload;

  EventKind kind() const;
  /// Tab-separated trace line: time, seq, kind, summary.
  std::string trace_line() const;
};

/// Min-heap keyed on (time, seq). seq is assigned on push, strictly
/// increasing, which makes equal-time ordering the insertion order.
class EventQueue {
 public:
  /// Enqueues and assigns the event's seq.
  void push(double time, EventPayload payload);

  /// Removes and returns the earliest event; nullopt when empty.
  std::optional<Event> pop();

  /// Earliest event without removing it; nullptr when empty.
  const Event* peek() const { return heap_.empty() ? nullptr : &heap_.front(); }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  /// Unordered view of pending events (horizon accounting).
  const std::vector<Event>& pending() const { return heap_; }

 private:
  std::vector<Event> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace manetsim
