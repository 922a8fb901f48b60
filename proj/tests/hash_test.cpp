#include <gtest/gtest.h>

#include <cmath>

#include "dloc/hash/chord.hpp"
#include "dloc/hash/consistent_hashing.hpp"
#include "dloc/hash/ring.hpp"
#include "oracles.hpp"

using namespace dloc;
using hash::Key;
using hash::Keyspace;
using net::NodeId;
using proto::DataId;

TEST(Keyspace, HashIsUniform) {
  // Chi-square over 16 buckets; 37.70 is the 0.999 quantile at 15 degrees of freedom.
  const Keyspace ks(16);
  std::vector<double> buckets(16, 0.0);
  constexpr int kNames = 16000;
  for (int i = 0; i < kNames; ++i) buckets[ks.hash("name-" + std::to_string(i)).value >> 12] += 1;
  const double expected = kNames / 16.0;
  double chi2 = 0;
  for (double b : buckets) chi2 += (b - expected) * (b - expected) / expected;
  EXPECT_LT(chi2, 37.70);
}

TEST(Keyspace, ArcsAreHalfOpen) {
  const Keyspace ks(5);
  EXPECT_TRUE(ks.in_arc(Key{3}, Key{1}, Key{3}));
  EXPECT_FALSE(ks.in_arc(Key{1}, Key{1}, Key{3}));
  EXPECT_TRUE(ks.in_arc(Key{0}, Key{30}, Key{2}));
  EXPECT_TRUE(ks.in_arc(Key{17}, Key{4}, Key{4}));
  EXPECT_EQ(ks.distance(Key{30}, Key{2}), 4u);
  EXPECT_EQ(ks.add(Key{31}, 3).value, 2u);
}

TEST(Ring, SuccessorWrapsAround) {
  hash::RingView ring(Keyspace(5));
  ring.add_at(NodeId(0), Key{4});
  ring.add_at(NodeId(1), Key{12});
  ring.add_at(NodeId(2), Key{25});
  EXPECT_EQ(ring.successor(Key{4}), NodeId(0));
  EXPECT_EQ(ring.successor(Key{5}), NodeId(1));
  EXPECT_EQ(ring.successor(Key{26}), NodeId(0));
  EXPECT_EQ(ring.predecessor(NodeId(0)), NodeId(2));
  EXPECT_EQ(ring.range_size(NodeId(0)), 11u);
  EXPECT_EQ(ring.dump(), "4 0\n12 1\n25 2\n");
  ring.remove(NodeId(1));
  EXPECT_EQ(ring.successor(Key{5}), NodeId(2));
}

TEST(Ring, NameSearchLandsInTheTargetRange) {
  hash::RingView ring(Keyspace(16));
  for (std::uint32_t i = 0; i < 32; ++i) ring.add(NodeId(i));
  for (std::uint32_t target = 0; target < 32; target += 5) {
    const auto found = hash::search_name(ring, "report", NodeId(target), 1u << 20);
    ASSERT_FALSE(found.name.empty());
    EXPECT_EQ(ring.successor(ring.keyspace().hash(found.name)), NodeId(target));
    EXPECT_GE(found.trials, 1u);
  }
}

TEST(Chord, NamingFollowsTheHash) {
  auto t = net::build_topology({}, 16, 1);
  hash::ChordDht chord(t, {});
  const DataId name = chord.name_for("report", NodeId(5));
  EXPECT_EQ(chord.store({name, std::nullopt}).stored_at, NodeId(5));
  EXPECT_GE(chord.last_name_trials(), 1u);
  const auto plain = chord.store({DataId("report"), NodeId(5)});
  EXPECT_EQ(plain.placement_honored, plain.stored_at == NodeId(5));
  const auto moved = chord.relocate(name, NodeId(9));
  EXPECT_EQ(moved.name_after_move, proto::NameStability::changes);
  ASSERT_TRUE(moved.stored_as.has_value());
  EXPECT_TRUE(chord.locate(*moved.stored_as, NodeId(0)).success);
}

TEST(Chord, LeaveHandsRecordsToTheSuccessor) {
  net::TopologySpec spec;
  spec.kind = net::TopologyKind::complete;
  auto t = net::build_topology(spec, 12, 1);
  hash::ChordDht chord(t, {});
  for (int i = 0; i < 300; ++i) chord.store({DataId("obj-" + std::to_string(i)), std::nullopt});
  const NodeId leaving(4);
  const NodeId heir = chord.successor(chord.keyspace().add(chord.key_of(leaving), 1));
  const std::size_t held = chord.records_at(leaving), heir_before = chord.records_at(heir);
  const auto r = chord.on_topology_change(net::apply_change(t, net::LeaveChange{leaving}));
  EXPECT_EQ(r.records_moved, held);
  EXPECT_EQ(chord.records_at(heir), heir_before + held);
  EXPECT_FALSE(r.manual_intervention);
  for (int i = 0; i < 300; ++i) EXPECT_TRUE(chord.locate(DataId("obj-" + std::to_string(i)), NodeId(0)).success);
}

TEST(ConsistentHashing, OneRequestPerLookup) {
  auto t = net::build_topology({}, 10, 1);
  hash::ConsistentHashing ch(t, {});
  for (int i = 0; i < 50; ++i) ch.store({DataId("obj-" + std::to_string(i)), std::nullopt});
  for (int i = 0; i < 50; ++i) {
    const DataId d("obj-" + std::to_string(i));
    const auto tr = ch.locate(d, NodeId(0));
    EXPECT_TRUE(tr.success);
    EXPECT_EQ(tr.requests, ch.owner_of(d) == NodeId(0) ? 0u : 1u);
    EXPECT_EQ(tr.links_used, t.hop_distance(NodeId(0), ch.owner_of(d)));
  }
  EXPECT_EQ(ch.table_stats().table_count, 10u);
}

TEST(ConsistentHashing, JoinIsBroadcastToEveryNode) {
  auto t = net::build_topology({}, 10, 1);
  hash::ConsistentHashing ch(t, {});
  for (int i = 0; i < 200; ++i) ch.store({DataId("obj-" + std::to_string(i)), std::nullopt});
  const auto r = ch.on_topology_change(net::apply_change(t, net::JoinChange{{NodeId(9)}, std::nullopt}));
  EXPECT_EQ(r.messages, 10u + (r.records_moved > 0 ? 1u : 0u));
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(ch.locate(DataId("obj-" + std::to_string(i)), NodeId(3)).success);
}

TEST(ConsistentHashing, RulesPinNamesToNodes) {
  auto t = net::build_topology({}, 6, 1);
  hash::ConsistentHashing ch(t, {}, hash::ConsistentHashingParams{16, true});
  EXPECT_TRUE((hash::PlacementRule{"logs/*", NodeId(2)}.matches(DataId("logs/today"))));
  EXPECT_FALSE((hash::PlacementRule{"logs/*", NodeId(2)}.matches(DataId("log"))));
  const auto r = ch.add_rule({"logs/*", NodeId(2)}, NodeId(0));
  EXPECT_EQ(r.messages, 5u);
  EXPECT_EQ(ch.owner_of(DataId("logs/today")), NodeId(2));
  const auto placed = ch.store_with_rule({DataId("notes"), NodeId(4)});
  EXPECT_EQ(placed.stored_at, NodeId(4));
  EXPECT_EQ(ch.owner_of(DataId("notes")), NodeId(4));
  EXPECT_TRUE(ch.locate(DataId("notes"), NodeId(0)).success);
}
