#pragma once

#include <cstdint>
#include <map>

#include "manetsim/messages.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

/// One node's knowledge of a route to a destination.
struct RoutingEntry {
  NodeId destination = 0;
  NodeId next_hop = 0;
  std::uint32_t hop_count = 0;  ///< >= 1 for any non-self destination
  SeqNo dest_seq = 0;
  bool seq_known = false;
  double expiry = 0.0;  ///< absolute seconds
  bool valid = false;
};

/// True iff the entry entitles an intermediate node to answer the RREQ:
/// valid, sequence known, and dest_seq at least as great as the RREQ's
/// (an unknown RREQ sequence defers to any knowledge).
bool fresh_enough(const RoutingEntry& entry, const Rreq& rreq);

/// Per-node routing table keyed by destination.
class RoutingTable {
 public:
  /// Usable entry lookup: valid flag and unexpired. An entry whose expiry
  /// has passed is flipped invalid on the way.
  RoutingEntry* lookup_valid(NodeId destination, double now);
  const RoutingEntry* find(NodeId destination) const;
  RoutingEntry* find(NodeId destination);

  /// Route acceptance rule. A candidate (which always carries a known
  /// sequence number) replaces the incumbent iff there is none, the
  /// incumbent's sequence is unknown, the candidate's dest_seq is strictly
  /// greater, or dest_seq ties and either the incumbent is invalid/expired
  /// or the candidate has strictly fewer hops. Ties keep the incumbent.
  /// On accept the entry is overwritten, marked valid, and its expiry set to
  /// now + active_route_timeout. Stored dest_seq never decreases.
  bool update(const RoutingEntry& candidate, double now,
              double active_route_timeout);

  /// Marks the entry invalid and bumps its dest_seq by `seq_bump`.
  /// No-op for missing entries.
  void invalidate(NodeId destination, SeqNo seq_bump = 1);

  std::map<NodeId, RoutingEntry>& entries() { return entries_; }
  const std::map<NodeId, RoutingEntry>& entries() const { return entries_; }

 private:
  std::map<NodeId, RoutingEntry> entries_;
};

}  // namespace manetsim
