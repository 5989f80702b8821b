#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <utility>

#include "manetsim/messages.hpp"
#include "manetsim/routing.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

class Simulation;

/// Protocol constants, RFC-3561-flavored defaults.
struct AodvConfig {
  double active_route_timeout = 3.0;  ///< seconds
  double seen_cache_lifetime = 3.0;   ///< seconds
  std::uint32_t net_diameter = 35;    ///< initial RREQ ttl
  std::uint32_t rreq_retries = 2;     ///< additional attempts after the first
  double retry_wait = 1.0;            ///< seconds, doubles per retry
  std::size_t buffer_cap = 64;        ///< per-destination pending packets

  bool operator==(const AodvConfig&) const = default;
};

/// Per-node AODV state machine. Handlers are invoked from the event loop
/// only; the Simulation reference provides the clock, the radio, timers and
/// metrics counters.
class AodvNode {
 public:
  AodvNode(NodeId id, const AodvConfig& cfg) : id_(id), cfg_(cfg) {}

  /// Starts (or restarts) route discovery toward dest. Increments own_seq
  /// and rreq_id, floods an RREQ, and arms the retry timer.
  void originate_discovery(Simulation& sim, NodeId dest);

  void handle_rreq(Simulation& sim, const Rreq& rreq, NodeId previous_hop);
  void handle_rrep(Simulation& sim, const Rrep& rrep, NodeId previous_hop);
  void handle_rerr(Simulation& sim, const Rerr& rerr, NodeId previous_hop);

  /// Routes one data packet: unicast via the table, or buffer + discover at
  /// the source, or drop with an RERR at an intermediate node.
  void forward_data(Simulation& sim, const DataPacket& packet);

  /// Unicast to lost_neighbor failed: invalidate every route through it and
  /// broadcast an RERR listing those destinations.
  void handle_link_break(Simulation& sim, NodeId lost_neighbor);

  /// RREQ retry timer callback; stale rounds are ignored.
  void on_retry_timer(Simulation& sim, NodeId dest, std::uint64_t round);

  /// Data packet whose unicast failed, re-dispatched after link-break
  /// handling. Buffers + rediscovers at the source; counts dropped_no_route
  /// at an intermediate node (the link-break RERR already went out).
  void redispatch_after_break(Simulation& sim, const DataPacket& packet);

  /// Records a locally originated (originator, rreq_id) so echoes of our own
  /// flood are discarded. Also used by attackers for their forgeries.
  void mark_rreq_seen(double now, NodeId originator, std::uint32_t rreq_id);

  /// Duplicate-suppression check; true if (originator, rreq_id) is new, in
  /// which case it is recorded.
  bool check_and_mark_rreq(double now, NodeId originator,
                           std::uint32_t rreq_id);

  NodeId id() const { return id_; }
  SeqNo own_seq() const { return own_seq_; }
  std::uint32_t rreq_counter() const { return rreq_counter_; }
  RoutingTable& table() { return table_; }
  const RoutingTable& table() const { return table_; }
  bool has_pending_discovery(NodeId dest) const {
    return pending_.count(dest) != 0;
  }
  std::size_t buffered_count(NodeId dest) const;
  std::size_t total_buffered() const;

 private:
  struct Pending {
    std::uint32_t retries_left = 0;
    double next_wait = 0.0;
    std::uint64_t round = 0;
    std::deque<DataPacket> buffer;
  };

  void send_rreq(Simulation& sim, NodeId dest, Pending& pending);
  void flush_pending(Simulation& sim, NodeId dest);
  void drop_pending(Simulation& sim, NodeId dest);
  void maybe_reply_or_rebroadcast(Simulation& sim, const Rreq& rreq);

  NodeId id_;
  AodvConfig cfg_;
  SeqNo own_seq_ = 0;
  std::uint32_t rreq_counter_ = 0;
  std::uint64_t next_round_ = 0;
  RoutingTable table_;
  std::map<std::pair<NodeId, std::uint32_t>, double> seen_rreqs_;
  std::map<NodeId, Pending> pending_;
};

}  // namespace manetsim
