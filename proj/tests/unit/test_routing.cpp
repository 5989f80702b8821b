#include <cstdint>

#include "doctest.h"
#include "manetsim/random.hpp"
#include "manetsim/routing.hpp"

using namespace manetsim;

namespace {

RoutingEntry entry(SeqNo seq, std::uint32_t hops, bool valid = true,
                   bool seq_known = true, double expiry = 1e9) {
  RoutingEntry e;
  e.destination = 7;
  e.next_hop = 1;
  e.hop_count = hops;
  e.dest_seq = seq;
  e.seq_known = seq_known;
  e.expiry = expiry;
  e.valid = valid;
  return e;
}

Rreq rreq_for(SeqNo seq, bool unknown = false) {
  Rreq r;
  r.originator = 0;
  r.originator_seq = 1;
  r.rreq_id = 1;
  r.destination = 7;
  r.dest_seq = seq;
  r.dest_seq_unknown = unknown;
  r.hop_count = 0;
  r.ttl = 35;
  return r;
}

}  // namespace

TEST_CASE("fresh_enough truth table") {
  // Valid, known sequence: compares entry seq against the request's.
  CHECK(fresh_enough(entry(10, 3), rreq_for(9)));
  CHECK(fresh_enough(entry(10, 3), rreq_for(10)));
  CHECK_FALSE(fresh_enough(entry(10, 3), rreq_for(11)));

  // A requester with no sequence knowledge accepts any known route.
  CHECK(fresh_enough(entry(0, 3), rreq_for(999, true)));

  // Invalid or sequence-unknown entries never qualify.
  CHECK_FALSE(fresh_enough(entry(10, 3, false), rreq_for(9)));
  CHECK_FALSE(fresh_enough(entry(10, 3, true, false), rreq_for(9)));
  CHECK_FALSE(fresh_enough(entry(10, 3, true, false), rreq_for(999, true)));
  CHECK_FALSE(fresh_enough(entry(10, 3, false, false), rreq_for(9)));
}

TEST_CASE("update prefers fresher sequence numbers over shorter paths") {
  RoutingTable table;
  REQUIRE(table.update(entry(10, 3), 0.0, 3.0));
  // Newer sequence wins even with many more hops.
  CHECK(table.update(entry(11, 7), 0.0, 3.0));
  CHECK(table.find(7)->hop_count == 7);
  CHECK(table.find(7)->dest_seq == 11);
  // Stale sequence loses even with one hop.
  CHECK_FALSE(table.update(entry(9, 1), 0.0, 3.0));
  CHECK(table.find(7)->hop_count == 7);
}

TEST_CASE("update breaks sequence ties by hop count, full tie keeps incumbent") {
  RoutingTable table;
  REQUIRE(table.update(entry(10, 4), 0.0, 3.0));
  CHECK_FALSE(table.update(entry(10, 4), 0.0, 3.0));
  CHECK_FALSE(table.update(entry(10, 5), 0.0, 3.0));
  CHECK(table.update(entry(10, 2), 0.0, 3.0));
  CHECK(table.find(7)->hop_count == 2);
}

TEST_CASE("an unusable incumbent loses an equal-sequence tie") {
  RoutingTable table;
  SUBCASE("invalidated") {
    REQUIRE(table.update(entry(10, 2), 0.0, 3.0));
    table.find(7)->valid = false;
    CHECK(table.update(entry(10, 6), 0.0, 3.0));
    CHECK(table.find(7)->valid);
    CHECK(table.find(7)->hop_count == 6);
  }
  SUBCASE("expired") {
    REQUIRE(table.update(entry(10, 2), 0.0, 3.0));  // expiry 3.0
    CHECK(table.update(entry(10, 6), 5.0, 3.0));
    CHECK(table.find(7)->expiry == 8.0);
  }
}

TEST_CASE("an incumbent without sequence knowledge always yields") {
  RoutingTable table;
  RoutingEntry unknown = entry(0, 1, true, false);
  REQUIRE(table.update(unknown, 0.0, 3.0));
  CHECK(table.update(entry(0, 9), 0.0, 3.0));
  CHECK(table.find(7)->seq_known);
  CHECK(table.find(7)->hop_count == 9);
}

TEST_CASE("update stamps validity and expiry") {
  RoutingTable table;
  RoutingEntry cand = entry(5, 2, false, true, 0.0);  // flags ignored on accept
  REQUIRE(table.update(cand, 12.0, 3.0));
  const RoutingEntry* got = table.find(7);
  REQUIRE(got != nullptr);
  CHECK(got->valid);
  CHECK(got->expiry == 15.0);
}

TEST_CASE("lookup_valid expires lazily") {
  RoutingTable table;
  REQUIRE(table.update(entry(5, 2), 0.0, 3.0));
  CHECK(table.lookup_valid(7, 2.9) != nullptr);
  CHECK(table.lookup_valid(7, 3.0) != nullptr);  // inclusive endpoint
  CHECK(table.lookup_valid(7, 3.1) == nullptr);
  CHECK_FALSE(table.find(7)->valid);  // flipped on the way
  CHECK(table.lookup_valid(99, 0.0) == nullptr);
}

TEST_CASE("invalidate bumps the sequence and survives re-offer of stale routes") {
  RoutingTable table;
  REQUIRE(table.update(entry(5, 2), 0.0, 3.0));
  table.invalidate(7);
  CHECK_FALSE(table.find(7)->valid);
  CHECK(table.find(7)->dest_seq == 6);
  // The broken route's own sequence cannot reinstall itself.
  CHECK_FALSE(table.update(entry(5, 2), 0.1, 3.0));
  CHECK(table.update(entry(6, 4), 0.1, 3.0));
  table.invalidate(12345);  // missing: no-op
  CHECK(table.entries().size() == 1);
}

TEST_CASE("stored sequence numbers never decrease under random updates") {
  RandomStream rng(99, StreamId::Traffic);
  RoutingTable table;
  bool have = false;
  for (int i = 0; i < 2000; ++i) {
    RoutingEntry cand = entry(static_cast<SeqNo>(rng.below(50)),
                              static_cast<std::uint32_t>(1 + rng.below(8)));
    const double now = static_cast<double>(i) * 0.01;
    const RoutingEntry before = have ? *table.find(7) : RoutingEntry{};
    const bool accepted = table.update(cand, now, 3.0);
    const RoutingEntry& after = *table.find(7);
    if (have) {
      CHECK(after.dest_seq >= before.dest_seq);
      if (accepted) {
        const bool usable = before.valid && before.expiry >= now;
        const bool justified =
            !before.seq_known || cand.dest_seq > before.dest_seq ||
            (cand.dest_seq == before.dest_seq &&
             (!usable || cand.hop_count < before.hop_count));
        CHECK(justified);
      } else {
        CHECK(after.dest_seq == before.dest_seq);
        CHECK(after.hop_count == before.hop_count);
      }
    }
    have = true;
  }
}
