#include "manetsim/routing.hpp"

namespace manetsim {

bool fresh_enough(const RoutingEntry& entry, const Rreq& rreq) {
  return entry.valid && entry.seq_known &&
         (rreq.dest_seq_unknown || entry.dest_seq >= rreq.dest_seq);
}

RoutingEntry* RoutingTable::lookup_valid(NodeId destination, double now) {
  auto it = entries_.find(destination);
  if (it == entries_.end()) return nullptr;
  RoutingEntry& entry = it->second;
  if (entry.valid && entry.expiry < now) entry.valid = false;  // lazy expiry
  return entry.valid ? &entry : nullptr;
}

const RoutingEntry* RoutingTable::find(NodeId destination) const {
  auto it = entries_.find(destination);
  return it == entries_.end() ? nullptr : &it->second;
}

RoutingEntry* RoutingTable::find(NodeId destination) {
  auto it = entries_.find(destination);
  return it == entries_.end() ? nullptr : &it->second;
}

bool RoutingTable::update(const RoutingEntry& candidate, double now,
                          double active_route_timeout) {
  auto it = entries_.find(candidate.destination);
  bool accept = false;
  if (it == entries_.end()) {
    accept = true;
  } else {
    const RoutingEntry& existing = it->second;
    const bool existing_usable = existing.valid && existing.expiry >= now;
    if (!existing.seq_known) {
      accept = true;
    } else if (candidate.dest_seq > existing.dest_seq) {
      accept = true;
    } else if (candidate.dest_seq == existing.dest_seq) {
      // Equal freshness: an unusable incumbent always loses; otherwise the
      // candidate must strictly improve the hop count. Full ties keep the
      // incumbent.
      accept = !existing_usable || candidate.hop_count < existing.hop_count;
    }
  }
  if (!accept) return false;

  RoutingEntry& slot = entries_[candidate.destination];
  slot = candidate;
  slot.valid = true;
  slot.expiry = now + active_route_timeout;
  return true;
}

void RoutingTable::invalidate(NodeId destination, SeqNo seq_bump) {
  auto it = entries_.find(destination);
  if (it == entries_.end()) return;
  it->second.valid = false;
  it->second.dest_seq += seq_bump;
}

}  // namespace manetsim
