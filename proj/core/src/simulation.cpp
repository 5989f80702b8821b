#include "manetsim/simulation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "manetsim/errors.hpp"

namespace manetsim {

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed)
    : cfg_(config), seed_(seed), rng_(seed) {
  range_ = compute_range(cfg_.radio);
  nodes_.reserve(cfg_.node_count);
  for (NodeId id = 0; id < cfg_.node_count; ++id) {
    nodes_.emplace_back(id, cfg_.aodv);
  }
  attackers_.resize(cfg_.node_count);
  select_attackers();
  mobility_ = std::make_unique<MobilityField>(
      cfg_.node_count, cfg_.arena_width, cfg_.arena_height, cfg_.mobility,
      cfg_.pinned_positions, rng_.stream(StreamId::Mobility));
  schedule_initial_events();
}

void Simulation::select_attackers() {
  std::vector<NodeId> chosen = cfg_.attackers.node_ids;
  if (chosen.empty() && cfg_.attackers.count > 0) {
    std::set<NodeId> endpoints;
    for (const TrafficFlow& flow : cfg_.traffic.flows) {
      endpoints.insert(flow.source);
      endpoints.insert(flow.destination);
    }
    std::vector<NodeId> eligible;
    for (NodeId id = 0; id < cfg_.node_count; ++id) {
      if (endpoints.count(id) == 0) eligible.push_back(id);
    }
    const std::size_t k =
        std::min<std::size_t>(cfg_.attackers.count, eligible.size());
    RandomStream& rng = rng_.stream(StreamId::AttackerChoice);
    // Partial Fisher-Yates: selection i never depends on how many follow,
    // so the k-attacker set is a subset of the (k+1)-attacker set.
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(
                                    static_cast<std::uint64_t>(
                                        eligible.size() - i)));
      std::swap(eligible[i], eligible[j]);
      chosen.push_back(eligible[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  for (NodeId id : chosen) {
    if (id >= cfg_.node_count) {
      throw ContractViolation("attacker id " + std::to_string(id) +
                              " out of range");
    }
    attackers_[id] = AttackerState{cfg_.attackers.behavior};
  }
  attacker_ids_ = std::move(chosen);
}

void Simulation::schedule_initial_events() {
  // First in, so it wins ties at the horizon: same-time events scheduled
  // later stay unprocessed and count as in flight.
  schedule(cfg_.duration, SimulationEndPayload{});

  const std::vector<double> arrivals = mobility_->initial_arrivals();
  for (NodeId id = 0; id < arrivals.size(); ++id) {
    schedule(arrivals[id], WaypointArrivalPayload{id});
  }

  RandomStream& traffic = rng_.stream(StreamId::Traffic);
  for (std::size_t i = 0; i < cfg_.traffic.flows.size(); ++i) {
    const double first =
        cfg_.traffic.start + traffic.uniform(cfg_.traffic.interarrival_lo,
                                             cfg_.traffic.interarrival_hi);
    schedule(first, TrafficGenerationPayload{i});
  }

  for (NodeId id : attacker_ids_) {
    const AttackerMode mode = attackers_[id]->config.mode;
    if (mode == AttackerMode::FakeRreq || mode == AttackerMode::Both) {
      schedule(0.0, TimerExpiryPayload{FakeRreqTimer{id}});
    }
  }
}

const RunMetrics& Simulation::run() {
  while (step()) {
  }
  finalize_metrics();
  return metrics_;
}

bool Simulation::step() {
  if (ended_) return false;
  const Event* top = queue_.peek();
  if (top == nullptr || top->time > cfg_.duration) {
    ended_ = true;
    return false;
  }
  const Event event = *queue_.pop();
  clock_ = event.time;
  if (trace_ != nullptr) *trace_ << event.trace_line() << '\n';
  dispatch(event);
  return !ended_;
}

void Simulation::run_until(double t) {
  while (!ended_) {
    const Event* top = queue_.peek();
    if (top == nullptr || top->time > t || top->time > cfg_.duration) break;
    step();
  }
  // Land exactly on t so position queries after the call are well defined
  // regardless of when the last event happened to fire.
  clock_ = std::max(clock_, std::min(t, cfg_.duration));
}

void Simulation::schedule(double time, EventPayload payload) {
  if (time < clock_) {
    throw ContractViolation("event scheduled in the past: t=" +
                            std::to_string(time) + " clock=" +
                            std::to_string(clock_));
  }
  queue_.push(time, std::move(payload));
}

void Simulation::dispatch(const Event& event) {
  std::visit(
      [this](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FrameDeliveryPayload>) {
          on_frame_delivery(p);
        } else if constexpr (std::is_same_v<P, TimerExpiryPayload>) {
          on_timer(p);
        } else if constexpr (std::is_same_v<P, TrafficGenerationPayload>) {
          on_traffic_generation(p);
        } else if constexpr (std::is_same_v<P, WaypointArrivalPayload>) {
          on_waypoint_arrival(p);
        } else {
          ended_ = true;
        }
      },
      event.payload);
}

void Simulation::on_frame_delivery(const FrameDeliveryPayload& p) {
  const NodeId me = p.recipient;
  AodvNode& self = node(me);
  const Frame& frame = p.frame;

  if (const Rreq* rreq = std::get_if<Rreq>(&frame.payload)) {
    const bool forges_replies =
        is_attacker(me) &&
        attackers_[me]->config.mode != AttackerMode::FakeRreq;
    if (forges_replies && rreq->originator != me && rreq->destination != me) {
      attacker_handle_rreq(me, *rreq, frame.sender);
    } else {
      self.handle_rreq(*this, *rreq, frame.sender);
    }
    return;
  }
  if (const Rrep* rrep = std::get_if<Rrep>(&frame.payload)) {
    self.handle_rrep(*this, *rrep, frame.sender);
    return;
  }
  if (const Rerr* rerr = std::get_if<Rerr>(&frame.payload)) {
    self.handle_rerr(*this, *rerr, frame.sender);
    return;
  }
  const DataPacket& packet = std::get<DataPacket>(frame.payload);
  if (packet.destination == me) {
    ++metrics_.delivered;
  } else if (is_attacker(me)) {
    ++metrics_.dropped_by_attacker;
  } else {
    self.forward_data(*this, packet);
  }
}

void Simulation::attacker_handle_rreq(NodeId attacker, const Rreq& rreq,
                                      NodeId previous_hop) {
  AodvNode& self = nodes_[attacker];
  // One forged reply per overheard request.
  if (!self.check_and_mark_rreq(clock_, rreq.originator, rreq.rreq_id)) {
    return;
  }
  AttackerState& state = *attackers_[attacker];
  const Rrep forged = craft_fake_rrep(rreq, state.config,
                                      cfg_.aodv.active_route_timeout);
  transmit(make_control_frame(attacker, previous_hop, forged));
  // No genuine route install, no rebroadcast: the flood dies here.
}

void Simulation::on_timer(const TimerExpiryPayload& p) {
  if (const RreqRetryTimer* retry = std::get_if<RreqRetryTimer>(&p.timer)) {
    nodes_[retry->node].on_retry_timer(*this, retry->destination,
                                       retry->round);
    return;
  }
  emit_fake_rreqs(std::get<FakeRreqTimer>(p.timer).attacker);
}

void Simulation::emit_fake_rreqs(NodeId attacker) {
  AttackerState& state = *attackers_[attacker];
  AodvNode& self = nodes_[attacker];
  for (const TrafficFlow& flow : cfg_.traffic.flows) {
    const SeqNo victim_seq = nodes_[flow.source].own_seq();
    const std::uint32_t forged_id = kForgedRreqIdBase + state.forge_counter++;
    const Rreq forged =
        craft_fake_rreq(flow.source, victim_seq, flow.destination, forged_id,
                        state.config, cfg_.aodv.net_diameter);
    // Mark it seen so copies echoed back are not rebroadcast by us.
    self.mark_rreq_seen(clock_, flow.source, forged_id);
    transmit(make_control_frame(attacker, kBroadcastId, forged));
  }
  schedule(clock_ + state.config.fake_rreq_period,
           TimerExpiryPayload{FakeRreqTimer{attacker}});
}

void Simulation::on_traffic_generation(const TrafficGenerationPayload& p) {
  const TrafficFlow& flow = cfg_.traffic.flows[p.flow_index];
  DataPacket packet;
  packet.id = next_packet_id_++;
  packet.source = flow.source;
  packet.destination = flow.destination;
  packet.size_bits =
      rng_.stream(StreamId::PacketSize).exponential(cfg_.traffic.mean_packet_bits);
  packet.created_at = clock_;
  ++metrics_.sent;
  nodes_[flow.source].forward_data(*this, packet);

  const double gap = rng_.stream(StreamId::Traffic)
                         .uniform(cfg_.traffic.interarrival_lo,
                                  cfg_.traffic.interarrival_hi);
  schedule(clock_ + gap, TrafficGenerationPayload{p.flow_index});
}

void Simulation::on_waypoint_arrival(const WaypointArrivalPayload& p) {
  const MobilityLeg& leg =
      mobility_->advance_leg(p.node, clock_, rng_.stream(StreamId::Mobility));
  schedule(leg.arrive_time, WaypointArrivalPayload{p.node});
}

std::vector<NodeId> Simulation::neighbors(NodeId node, double time) const {
  if (node >= cfg_.node_count) {
    throw ContractViolation("unknown node id " + std::to_string(node));
  }
  const Position origin = mobility_->position_at(node, time);
  std::vector<NodeId> out;
  for (NodeId other = 0; other < cfg_.node_count; ++other) {
    if (other == node) continue;
    if (distance(origin, mobility_->position_at(other, time)) <= range_) {
      out.push_back(other);
    }
  }
  return out;
}

void Simulation::transmit(const Frame& frame) {
  const double serialization = frame.size_bits / cfg_.radio.bitrate_bps;
  const Position from = mobility_->position_at(frame.sender, clock_);

  if (frame.recipient == kBroadcastId) {
    for (NodeId nb : neighbors(frame.sender, clock_)) {
      const double d = distance(from, mobility_->position_at(nb, clock_));
      schedule(clock_ + serialization + d / kSpeedOfLight,
               FrameDeliveryPayload{frame, nb});
    }
    return;
  }

  const double d =
      distance(from, mobility_->position_at(frame.recipient, clock_));
  if (d <= range_) {
    schedule(clock_ + serialization + d / kSpeedOfLight,
             FrameDeliveryPayload{frame, frame.recipient});
    return;
  }

  // Link failure, handled synchronously: the sender's protocol layer reacts
  // before any queued event is processed.
  AodvNode& sender = nodes_[frame.sender];
  sender.handle_link_break(*this, frame.recipient);
  if (const DataPacket* packet = std::get_if<DataPacket>(&frame.payload)) {
    sender.redispatch_after_break(*this, *packet);
  }
}

AodvNode& Simulation::node(NodeId id) {
  if (id >= nodes_.size()) {
    throw ContractViolation("unknown node id " + std::to_string(id));
  }
  return nodes_[id];
}

const AodvNode& Simulation::node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw ContractViolation("unknown node id " + std::to_string(id));
  }
  return nodes_[id];
}

Position Simulation::position_of(NodeId id) const {
  return mobility_->position_at(id, clock_);
}

void Simulation::move_node(NodeId id, Position p) {
  mobility_->pin(id, p, clock_);
}

bool Simulation::is_attacker(NodeId id) const {
  return id < attackers_.size() && attackers_[id].has_value();
}

void Simulation::finalize_metrics() {
  if (finalized_) return;
  finalized_ = true;
  std::uint64_t in_flight = 0;
  for (const Event& event : queue_.pending()) {
    if (const auto* fd = std::get_if<FrameDeliveryPayload>(&event.payload)) {
      if (std::holds_alternative<DataPacket>(fd->frame.payload)) ++in_flight;
    }
  }
  for (const AodvNode& node : nodes_) in_flight += node.total_buffered();
  metrics_.in_flight_at_end = in_flight;
  metrics_.pdr = metrics_.sent == 0
                     ? 0.0
                     : static_cast<double>(metrics_.delivered) /
                           static_cast<double>(metrics_.sent);
}

std::string Simulation::dump_routing_tables() const {
  std::ostringstream out;
  out << "node_id,destination,next_hop,hop_count,dest_seq,valid\n";
  for (const AodvNode& node : nodes_) {
    for (const auto& [dest, entry] : node.table().entries()) {
      out << node.id() << ',' << dest << ',' << entry.next_hop << ','
          << entry.hop_count << ',' << entry.dest_seq << ','
          << (entry.valid ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace manetsim
