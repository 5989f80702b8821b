#pragma once

#include <cstdint>

#include "manetsim/messages.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

enum class AttackerMode { FakeRrep, FakeRreq, Both };

const char* to_string(AttackerMode mode);

/// Black-hole behavior parameters. The forged sequence number must beat the
/// victim's genuine one in route selection, so seq_inflation >= 1; the
/// advertised hop count of 0 means "one hop from the destination" after the
/// receiver's +1.
struct AttackerConfig {
  AttackerMode mode = AttackerMode::FakeRrep;
  SeqNo seq_inflation = 100;
  std::uint32_t advertised_hop_count = 0;
  double fake_rreq_period = 10.0;  ///< seconds, FakeRreq/Both modes

  bool operator==(const AttackerConfig&) const = default;
};

/// Per-attacker mutable state.
struct AttackerState {
  AttackerConfig config;
  std::uint32_t forge_counter = 0;  ///< distinct ids for forged RREQs
};

/// Forged-RREQ ids start here so they never collide with a victim's genuine
/// per-originator counter.
inline constexpr std::uint32_t kForgedRreqIdBase = 1u << 20;

/// Forged reply to an overheard RREQ: claims a route to rreq.destination
/// with an inflated sequence number and the advertised hop count. The caller
/// unicasts it, from the attacker's own identity, to the node the RREQ
/// arrived from, installs no genuine route, and suppresses the rebroadcast.
Rrep craft_fake_rrep(const Rreq& rreq, const AttackerConfig& cfg,
                     double lifetime);

/// Forged route request impersonating victim_src: receivers install a
/// reverse route to victim_src whose next hop is the attacker. The caller
/// broadcasts it from the attacker's own identity.
/// victim_src_seq is the victim's current sequence number; the forged
/// originator_seq adds seq_inflation on top of it.
Rreq craft_fake_rreq(NodeId victim_src, SeqNo victim_src_seq,
                     NodeId victim_dst, std::uint32_t forged_rreq_id,
                     const AttackerConfig& cfg, std::uint32_t ttl);

}  // namespace manetsim
