#include "manetsim/blackhole.hpp"

namespace manetsim {

const char* to_string(AttackerMode mode) {
  switch (mode) {
    case AttackerMode::FakeRrep: return "fake_rrep";
    case AttackerMode::FakeRreq: return "fake_rreq";
    case AttackerMode::Both: return "both";
  }
  return "?";
}

Rrep craft_fake_rrep(const Rreq& rreq, const AttackerConfig& cfg,
                     double lifetime) {
  Rrep rrep;
  rrep.originator = rreq.originator;
  rrep.destination = rreq.destination;
  const SeqNo base = rreq.dest_seq_unknown ? 0 : rreq.dest_seq;
  rrep.dest_seq = base + cfg.seq_inflation;
  rrep.hop_count = cfg.advertised_hop_count;
  rrep.lifetime = lifetime;
  return rrep;
}

Rreq craft_fake_rreq(NodeId victim_src, SeqNo victim_src_seq,
                     NodeId victim_dst, std::uint32_t forged_rreq_id,
                     const AttackerConfig& cfg, std::uint32_t ttl) {
  Rreq rreq;
  rreq.originator = victim_src;
  rreq.destination = victim_dst;
  rreq.originator_seq = victim_src_seq + cfg.seq_inflation;
  rreq.rreq_id = forged_rreq_id;
  rreq.dest_seq = 0;
  rreq.dest_seq_unknown = true;
  rreq.hop_count = cfg.advertised_hop_count;
  rreq.ttl = ttl;
  return rreq;
}

}  // namespace manetsim
