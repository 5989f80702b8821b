#include "manetsim/messages.hpp"

#include <cstdio>

namespace manetsim {

Frame make_control_frame(NodeId sender, NodeId recipient, Rreq msg) {
  return Frame{sender, recipient, kRreqBits, std::move(msg)};
}

Frame make_control_frame(NodeId sender, NodeId recipient, Rrep msg) {
  return Frame{sender, recipient, kRrepBits, std::move(msg)};
}

Frame make_control_frame(NodeId sender, NodeId recipient, Rerr msg) {
  const double bits = rerr_bits(msg.unreachable.size());
  return Frame{sender, recipient, bits, std::move(msg)};
}

Frame make_data_frame(NodeId sender, NodeId recipient, DataPacket packet) {
  const double bits = packet.size_bits;
  return Frame{sender, recipient, bits, std::move(packet)};
}

namespace {

std::string format_bits(double bits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", bits);
  return buf;
}

struct SummaryVisitor {
  std::string operator()(const Rreq& m) const {
    return "rreq orig=" + std::to_string(m.originator) +
           " oseq=" + std::to_string(m.originator_seq) +
           " id=" + std::to_string(m.rreq_id) +
           " dst=" + std::to_string(m.destination) +
           " dseq=" + (m.dest_seq_unknown ? std::string("?")
                                          : std::to_string(m.dest_seq)) +
           " hops=" + std::to_string(m.hop_count) +
           " ttl=" + std::to_string(m.ttl);
  }
  std::string operator()(const Rrep& m) const {
    return "rrep orig=" + std::to_string(m.originator) +
           " dst=" + std::to_string(m.destination) +
           " dseq=" + std::to_string(m.dest_seq) +
           " hops=" + std::to_string(m.hop_count);
  }
  std::string operator()(const Rerr& m) const {
    std::string out = "rerr";
    for (const auto& [dest, seq] : m.unreachable) {
      out += " " + std::to_string(dest) + ":" + std::to_string(seq);
    }
    return out;
  }
  std::string operator()(const DataPacket& m) const {
    return "data id=" + std::to_string(m.id) +
           " src=" + std::to_string(m.source) +
           " dst=" + std::to_string(m.destination) +
           " bits=" + format_bits(m.size_bits);
  }
};

}  // namespace

std::string payload_summary(const FramePayload& payload) {
  return std::visit(SummaryVisitor{}, payload);
}

}  // namespace manetsim
