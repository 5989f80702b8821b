#include "manetsim/event.hpp"

#include <algorithm>
#include <cstdio>

namespace manetsim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FrameDelivery: return "FrameDelivery";
    case EventKind::TimerExpiry: return "TimerExpiry";
    case EventKind::TrafficGeneration: return "TrafficGeneration";
    case EventKind::WaypointArrival: return "WaypointArrival";
    case EventKind::SimulationEnd: return "SimulationEnd";
  }
  return "?";
}

namespace {

struct KindVisitor {
  EventKind operator()(const FrameDeliveryPayload&) const {
    return EventKind::FrameDelivery;
  }
  EventKind operator()(const TimerExpiryPayload&) const {
    return EventKind::TimerExpiry;
  }
  EventKind operator()(const TrafficGenerationPayload&) const {
    return EventKind::TrafficGeneration;
  }
  EventKind operator()(const WaypointArrivalPayload&) const {
    return EventKind::WaypointArrival;
  }
  EventKind operator()(const SimulationEndPayload&) const {
    return EventKind::SimulationEnd;
  }
};

struct TraceVisitor {
  std::string operator()(const FrameDeliveryPayload& p) const {
    return payload_summary(p.frame.payload) +
           " from=" + std::to_string(p.frame.sender) +
           " to=" + std::to_string(p.recipient);
  }
  std::string operator()(const TimerExpiryPayload& p) const {
    if (const auto* retry = std::get_if<RreqRetryTimer>(&p.timer)) {
      return "rreq_retry node=" + std::to_string(retry->node) +
             " dst=" + std::to_string(retry->destination) +
             " round=" + std::to_string(retry->round);
    }
    const auto& fake = std::get<FakeRreqTimer>(p.timer);
    return "fake_rreq attacker=" + std::to_string(fake.attacker);
  }
  std::string operator()(const TrafficGenerationPayload& p) const {
    return "flow=" + std::to_string(p.flow_index);
  }
  std::string operator()(const WaypointArrivalPayload& p) const {
    return "node=" + std::to_string(p.node);
  }
  std::string operator()(const SimulationEndPayload&) const { return "end"; }
};

// (time, seq) min-heap comparator. std heap primitives build max-heaps, so
// the comparison is reversed.
struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

}  // namespace

EventKind Event::kind() const { return std::visit(KindVisitor{}, payload); }

std::string Event::trace_line() const {
  char head[64];
  std::snprintf(head, sizeof(head), "%.9f\t%llu\t", time,
                static_cast<unsigned long long>(seq));
  return std::string(head) + to_string(kind()) + "\t" +
         std::visit(TraceVisitor{}, payload);
}

void EventQueue::push(double time, EventPayload payload) {
  heap_.push_back(Event{time, next_seq_++, std::move(payload)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

std::optional<Event> EventQueue::pop() {
  if (heap_.empty()) return std::nullopt;
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Event out = std::move(heap_.back());
  heap_.pop_back();
  return out;
}

}  // namespace manetsim
