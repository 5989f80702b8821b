#include "manetsim/aodv.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "manetsim/simulation.hpp"

namespace manetsim {

void AodvNode::originate_discovery(Simulation& sim, NodeId dest) {
  Pending& p = pending_[dest];
  if (p.round == 0) {
    p.retries_left = cfg_.rreq_retries;
    p.next_wait = cfg_.retry_wait;
    p.round = ++next_round_;
  }
  send_rreq(sim, dest, p);
}

void AodvNode::send_rreq(Simulation& sim, NodeId dest, Pending& pending) {
  own_seq_ += 1;
  rreq_counter_ += 1;

  Rreq rreq;
  rreq.originator = id_;
  rreq.originator_seq = own_seq_;
  rreq.rreq_id = rreq_counter_;
  rreq.destination = dest;
  const RoutingEntry* known = table_.find(dest);
  if (known != nullptr && known->seq_known) {
    rreq.dest_seq = known->dest_seq;
    rreq.dest_seq_unknown = false;
  } else {
    rreq.dest_seq = 0;
    rreq.dest_seq_unknown = true;
  }
  rreq.hop_count = 0;
  rreq.ttl = cfg_.net_diameter;

  mark_rreq_seen(sim.now(), id_, rreq.rreq_id);
  sim.transmit(make_control_frame(id_, kBroadcastId, rreq));
  sim.schedule(sim.now() + pending.next_wait,
               TimerExpiryPayload{RreqRetryTimer{id_, dest, pending.round}});
  pending.next_wait *= 2.0;
}

void AodvNode::on_retry_timer(Simulation& sim, NodeId dest,
                              std::uint64_t round) {
  auto it = pending_.find(dest);
  if (it == pending_.end() || it->second.round != round) return;
  if (table_.lookup_valid(dest, sim.now()) != nullptr) {
    flush_pending(sim, dest);
    return;
  }
  if (it->second.retries_left == 0) {
    drop_pending(sim, dest);
    return;
  }
  it->second.retries_left -= 1;
  send_rreq(sim, dest, it->second);
}

void AodvNode::handle_rreq(Simulation& sim, const Rreq& rreq,
                           NodeId previous_hop) {
  // Echoes of our own flood, and forged requests impersonating us.
  if (rreq.originator == id_) return;
  if (!check_and_mark_rreq(sim.now(), rreq.originator, rreq.rreq_id)) return;

  RoutingEntry reverse;
  reverse.destination = rreq.originator;
  reverse.next_hop = previous_hop;
  reverse.hop_count = rreq.hop_count + 1;
  reverse.dest_seq = rreq.originator_seq;
  reverse.seq_known = true;
  table_.update(reverse, sim.now(), cfg_.active_route_timeout);

  maybe_reply_or_rebroadcast(sim, rreq);
}

void AodvNode::maybe_reply_or_rebroadcast(Simulation& sim, const Rreq& rreq) {
  RoutingEntry* reverse = table_.lookup_valid(rreq.originator, sim.now());
  if (rreq.destination == id_) {
    const SeqNo floor = rreq.dest_seq_unknown ? 0 : rreq.dest_seq;
    own_seq_ = std::max(own_seq_ + 1, floor);
    if (reverse == nullptr) return;
    Rrep rrep;
    rrep.originator = rreq.originator;
    rrep.destination = id_;
    rrep.dest_seq = own_seq_;
    rrep.hop_count = 0;
    rrep.lifetime = cfg_.active_route_timeout;
    sim.transmit(make_control_frame(id_, reverse->next_hop, rrep));
    return;
  }

  RoutingEntry* entry = table_.lookup_valid(rreq.destination, sim.now());
  if (entry != nullptr && fresh_enough(*entry, rreq)) {
    if (reverse == nullptr) return;
    Rrep rrep;
    rrep.originator = rreq.originator;
    rrep.destination = rreq.destination;
    rrep.dest_seq = entry->dest_seq;
    rrep.hop_count = entry->hop_count;
    rrep.lifetime = std::max(0.0, entry->expiry - sim.now());
    sim.transmit(make_control_frame(id_, reverse->next_hop, rrep));
    return;
  }

  if (rreq.ttl <= 1) return;  // forwarded copy would carry ttl 0
  Rreq fwd = rreq;
  fwd.hop_count += 1;
  fwd.ttl -= 1;
  sim.transmit(make_control_frame(id_, kBroadcastId, fwd));
}

void AodvNode::handle_rrep(Simulation& sim, const Rrep& rrep,
                           NodeId previous_hop) {
  RoutingEntry forward;
  forward.destination = rrep.destination;
  forward.next_hop = previous_hop;
  forward.hop_count = rrep.hop_count + 1;
  forward.dest_seq = rrep.dest_seq;
  forward.seq_known = true;
  table_.update(forward, sim.now(), cfg_.active_route_timeout);

  if (rrep.originator == id_) {
    if (table_.lookup_valid(rrep.destination, sim.now()) != nullptr) {
      flush_pending(sim, rrep.destination);
    }
    return;
  }

  RoutingEntry* reverse = table_.lookup_valid(rrep.originator, sim.now());
  if (reverse == nullptr) return;  // reverse route gone, reply dies here
  Rrep fwd = rrep;
  fwd.hop_count += 1;
  sim.transmit(make_control_frame(id_, reverse->next_hop, fwd));
}

void AodvNode::handle_rerr(Simulation& sim, const Rerr& rerr,
                           NodeId previous_hop) {
  std::vector<std::pair<NodeId, SeqNo>> matched;
  for (const auto& [dest, seq] : rerr.unreachable) {
    RoutingEntry* entry = table_.find(dest);
    if (entry != nullptr && entry->valid && entry->next_hop == previous_hop &&
        entry->dest_seq <= seq) {
      entry->valid = false;
      entry->dest_seq = seq;
      matched.emplace_back(dest, seq);
    }
  }
  if (!matched.empty()) {
    sim.transmit(make_control_frame(id_, kBroadcastId, Rerr{matched}));
  }
}

void AodvNode::forward_data(Simulation& sim, const DataPacket& packet) {
  RoutingEntry* entry = table_.lookup_valid(packet.destination, sim.now());
  if (entry != nullptr) {
    entry->expiry = sim.now() + cfg_.active_route_timeout;
    sim.transmit(make_data_frame(id_, entry->next_hop, packet));
    return;
  }

  if (packet.source == id_) {
    const bool discovering = pending_.count(packet.destination) != 0;
    Pending& p = pending_[packet.destination];
    p.buffer.push_back(packet);
    if (p.buffer.size() > cfg_.buffer_cap) {
      p.buffer.pop_front();
      sim.count_dropped_buffer();
    }
    if (!discovering) originate_discovery(sim, packet.destination);
    return;
  }

  // Transit packet with no usable route: drop, warn the neighborhood.
  RoutingEntry* stale = table_.find(packet.destination);
  SeqNo report_seq = 0;
  if (stale != nullptr) {
    stale->valid = false;
    stale->dest_seq += 1;
    report_seq = stale->dest_seq;
  }
  sim.count_dropped_no_route();
  sim.transmit(make_control_frame(
      id_, kBroadcastId, Rerr{{{packet.destination, report_seq}}}));
}

void AodvNode::handle_link_break(Simulation& sim, NodeId lost_neighbor) {
  std::vector<std::pair<NodeId, SeqNo>> unreachable;
  for (auto& [dest, entry] : table_.entries()) {
    if (entry.valid && entry.next_hop == lost_neighbor) {
      entry.valid = false;
      entry.dest_seq += 1;
      unreachable.emplace_back(dest, entry.dest_seq);
    }
  }
  if (!unreachable.empty()) {
    sim.transmit(make_control_frame(id_, kBroadcastId, Rerr{unreachable}));
  }
}

void AodvNode::redispatch_after_break(Simulation& sim,
                                      const DataPacket& packet) {
  if (packet.source == id_) {
    forward_data(sim, packet);  // re-buffers and rediscovers
    return;
  }
  // handle_link_break already broadcast the RERR for this destination.
  sim.count_dropped_no_route();
}

void AodvNode::flush_pending(Simulation& sim, NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  std::deque<DataPacket> buffered = std::move(it->second.buffer);
  pending_.erase(it);
  for (const DataPacket& packet : buffered) forward_data(sim, packet);
}

void AodvNode::drop_pending(Simulation& sim, NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  sim.count_dropped_no_route(it->second.buffer.size());
  pending_.erase(it);
}

void AodvNode::mark_rreq_seen(double now, NodeId originator,
                              std::uint32_t rreq_id) {
  seen_rreqs_[{originator, rreq_id}] = now + cfg_.seen_cache_lifetime;
}

bool AodvNode::check_and_mark_rreq(double now, NodeId originator,
                                   std::uint32_t rreq_id) {
  auto it = seen_rreqs_.find({originator, rreq_id});
  if (it != seen_rreqs_.end() && it->second >= now) return false;
  mark_rreq_seen(now, originator, rreq_id);
  if (seen_rreqs_.size() > 4096) {
    std::erase_if(seen_rreqs_,
                  [now](const auto& kv) { return kv.second < now; });
  }
  return true;
}

std::size_t AodvNode::buffered_count(NodeId dest) const {
  auto it = pending_.find(dest);
  return it == pending_.end() ? 0 : it->second.buffer.size();
}

std::size_t AodvNode::total_buffered() const {
  std::size_t total = 0;
  for (const auto& [dest, p] : pending_) total += p.buffer.size();
  return total;
}

}  // namespace manetsim
