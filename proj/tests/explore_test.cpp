#include <gtest/gtest.h>

#include "dloc/explore/flooding.hpp"
#include "dloc/explore/random_walk.hpp"
#include "oracles.hpp"

using namespace dloc;
using net::NodeId;
using proto::DataId;

namespace {

net::Topology build(net::TopologyKind kind, std::size_t n) {
  net::TopologySpec spec;
  spec.kind = kind;
  return net::build_topology(spec, n, 1);
}

}  // namespace

TEST(Flooding, LocalHitCostsNothing) {
  auto t = build(net::TopologyKind::complete, 6);
  explore::Flooding f(t, {});
  f.store({DataId("obj"), NodeId(2)});
  const auto tr = f.locate(DataId("obj"), NodeId(2));
  EXPECT_TRUE(tr.success);
  EXPECT_EQ(tr.links_used, 0u);
}

TEST(Flooding, DefaultTtlReachesEveryone) {
  auto t = build(net::TopologyKind::chain, 12);
  explore::Flooding f(t, {});
  f.store({DataId("obj"), NodeId(11)});
  const auto tr = f.locate(DataId("obj"), NodeId(0));
  EXPECT_TRUE(tr.success);
  EXPECT_EQ(tr.links_used, 11u);
  EXPECT_EQ(tr.requests, 11u);
}

TEST(Flooding, TreeFloodUsesEachLinkOnce) {
  auto t = build(net::TopologyKind::balanced_tree, 31);
  explore::Flooding f(t, {});
  f.store({DataId("obj"), NodeId(30)});
  const auto tr = f.locate(explore::ExploreQuery{1, DataId("missing"), 10, 1}, NodeId(0));
  EXPECT_FALSE(tr.success);
  EXPECT_EQ(tr.links_used, 30u);
  EXPECT_EQ(tr.requests, 30u);
}

TEST(Flooding, ZeroTtlStaysHome) {
  auto t = build(net::TopologyKind::complete, 4);
  explore::Flooding f(t, {});
  f.store({DataId("obj"), NodeId(1)});
  const auto tr = f.locate(explore::ExploreQuery{1, DataId("obj"), 0, 1}, NodeId(0));
  EXPECT_FALSE(tr.success);
  EXPECT_EQ(tr.links_used, 0u);
}

TEST(RandomWalk, SameQueryIdReplaysTheSameWalk) {
  auto t = build(net::TopologyKind::random_connected, 30);
  explore::RandomWalk a(t, {}, 42), b(t, {}, 42);
  a.store({DataId("obj"), NodeId(17)});
  b.store({DataId("obj"), NodeId(17)});
  for (std::uint64_t q = 0; q < 50; ++q) {
    const explore::ExploreQuery query{q, DataId("obj"), 12, 2};
    const auto x = a.locate(query, NodeId(0));
    const auto y = b.locate(query, NodeId(0));
    EXPECT_EQ(x.success, y.success);
    EXPECT_EQ(x.links_used, y.links_used);
  }
}

TEST(RandomWalk, LinksBoundedByWalkersTimesTtl) {
  auto t = build(net::TopologyKind::balanced_tree, 40);
  explore::RandomWalk w(t, {}, 3);
  w.store({DataId("obj"), NodeId(39)});
  for (std::uint64_t q = 0; q < 200; ++q) {
    const auto tr = w.locate(explore::ExploreQuery{q, DataId("obj"), 7, 3}, NodeId(0));
    EXPECT_LE(tr.links_used, 21u);
    EXPECT_LE(tr.requests, tr.links_used);
  }
}

TEST(RandomWalk, ChainWalkIsForcedForward) {
  // Without backtracking, a walker leaving a chain end must walk straight.
  auto t = build(net::TopologyKind::chain, 10);
  explore::RandomWalk w(t, {}, 1);
  w.store({DataId("obj"), NodeId(9)});
  EXPECT_TRUE(w.locate(explore::ExploreQuery{1, DataId("obj"), 9, 1}, NodeId(0)).success);
  EXPECT_FALSE(w.locate(explore::ExploreQuery{2, DataId("obj"), 8, 1}, NodeId(0)).success);
  EXPECT_DOUBLE_EQ(oracle::walk_hit_probability(t, NodeId(0), NodeId(9), 9), 1.0);
}

TEST(RandomWalk, WalkersPerDegree) {
  auto t = build(net::TopologyKind::complete, 9);
  explore::ExploreParams params;
  params.walkers_per_degree = true;
  params.ttl = 1;
  explore::RandomWalk w(t, {}, 8, params);
  w.store({DataId("obj"), NodeId(5)});
  const auto tr = w.locate(DataId("obj"), NodeId(0));
  EXPECT_EQ(tr.links_used, 8u);
}
