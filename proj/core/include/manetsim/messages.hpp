#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "manetsim/types.hpp"

namespace manetsim {

/// Route request, flooded network-wide during discovery.
struct Rreq {
  NodeId originator = 0;       ///< discovery source
  SeqNo originator_seq = 0;
  std::uint32_t rreq_id = 0;   ///< per-originator counter
  NodeId destination = 0;
  SeqNo dest_seq = 0;          ///< last sequence known for the destination
  bool dest_seq_unknown = false;
  std::uint32_t hop_count = 0;  ///< +1 per rebroadcast
  std::uint32_t ttl = 0;        ///< -1 per rebroadcast, dropped at 0

  bool operator==(const Rreq&) const = default;
};

/// Route reply, unicast hop-by-hop back along the reverse route.
struct Rrep {
  NodeId originator = 0;   ///< the discovery source the reply travels to
  NodeId destination = 0;  ///< the node the route leads to
  SeqNo dest_seq = 0;
  std::uint32_t hop_count = 0;  ///< +1 per forwarding hop
  double lifetime = 0.0;        ///< seconds

  bool operator==(const Rrep&) const = default;
};

/// Route error: destinations no longer reachable via the sender.
struct Rerr {
  std::vector<std::pair<NodeId, SeqNo>> unreachable;  // non-empty

  bool operator==(const Rerr&) const = default;
};

/// Application payload unit.
struct DataPacket {
  std::uint64_t id = 0;  ///< unique per run
  NodeId source = 0;
  NodeId destination = 0;
  double size_bits = 0.0;
  double created_at = 0.0;

  bool operator==(const DataPacket&) const = default;
};

using FramePayload = std::variant<Rreq, Rrep, Rerr, DataPacket>;

/// One radio transmission. recipient == kBroadcastId for broadcasts.
struct Frame {
  NodeId sender = 0;
  NodeId recipient = kBroadcastId;
  double size_bits = 0.0;
  FramePayload payload;
};

// Control message sizes on the wire, in bits. RFC-flavored fixed values;
// the simulation only uses them for serialization delay.
inline constexpr double kRreqBits = 192.0;
inline constexpr double kRrepBits = 160.0;
inline double rerr_bits(std::size_t unreachable_count) {
  return 96.0 + 64.0 * static_cast<double>(unreachable_count);
}

Frame make_control_frame(NodeId sender, NodeId recipient, Rreq msg);
Frame make_control_frame(NodeId sender, NodeId recipient, Rrep msg);
Frame make_control_frame(NodeId sender, NodeId recipient, Rerr msg);
Frame make_data_frame(NodeId sender, NodeId recipient, DataPacket packet);

/// One-line payload description for event traces.
std::string payload_summary(const FramePayload& payload);

}  // namespace manetsim
