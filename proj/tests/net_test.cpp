#include <gtest/gtest.h>

#include "dloc/net/rng.hpp"
#include "dloc/net/simulator.hpp"
#include "dloc/net/topology.hpp"
#include "oracles.hpp"

using namespace dloc;
using net::NodeId;

namespace {

net::Topology build(net::TopologyKind kind, std::size_t n, std::uint64_t seed = 1) {
  net::TopologySpec spec;
  spec.kind = kind;
  return net::build_topology(spec, n, seed);
}

}  // namespace

TEST(Topology, DiameterMatchesFloydWarshall) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    net::TopologySpec spec;
    spec.kind = net::TopologyKind::random_connected;
    spec.edge_probability = 0.12;
    const auto t = net::build_topology(spec, 25, seed);
    ASSERT_TRUE(t.connected());
    EXPECT_EQ(net::diameter(t), oracle::diameter(t)) << "seed " << seed;
    const auto d = oracle::all_pairs(t);
    for (NodeId a : t.nodes()) {
      EXPECT_EQ(t.eccentricity(a), oracle::eccentricity(t, a));
      for (NodeId b : t.nodes()) EXPECT_EQ(t.hop_distance(a, b), d[a.value][b.value]);
    }
  }
}

TEST(Topology, KnownShapes) {
  EXPECT_EQ(net::diameter(build(net::TopologyKind::chain, 10)), 9u);
  EXPECT_EQ(net::diameter(build(net::TopologyKind::ring, 8)), 4u);
  EXPECT_EQ(net::diameter(build(net::TopologyKind::complete, 12)), 1u);
  EXPECT_EQ(build(net::TopologyKind::complete, 12).link_count(), 66u);
  EXPECT_EQ(build(net::TopologyKind::balanced_tree, 15).link_count(), 14u);
}

TEST(Topology, ShortestPathIsConsistentWithNextHop) {
  const auto t = build(net::TopologyKind::balanced_tree, 31);
  for (NodeId a : t.nodes()) {
    for (NodeId b : t.nodes()) {
      const auto path = t.shortest_path(a, b);
      ASSERT_EQ(path.size(), t.hop_distance(a, b));
      if (a == b) continue;
      const NodeId hop = t.next_hop(a, b);
      EXPECT_TRUE(t.link_between(a, hop).has_value());
      EXPECT_EQ(t.hop_distance(hop, b) + 1, t.hop_distance(a, b));
    }
  }
}

TEST(Topology, ChangesKeepIdsAndAddresses) {
  auto t = build(net::TopologyKind::chain, 4);
  const auto join = net::apply_change(t, net::JoinChange{{NodeId(0), NodeId(3)}, std::nullopt});
  EXPECT_EQ(join.subject, NodeId(4));
  EXPECT_EQ(t.node_count(), 5u);
  EXPECT_EQ(net::diameter(t), 2u);
  const auto moved = net::apply_change(t, net::ReaddressChange{NodeId(2), t.next_free_address()});
  EXPECT_NE(moved.old_address, moved.new_address);
  EXPECT_EQ(t.node_with_address(moved.new_address), NodeId(2));
  EXPECT_FALSE(t.node_with_address(moved.old_address).has_value());
  net::apply_change(t, net::LeaveChange{NodeId(4)});
  EXPECT_FALSE(t.contains(NodeId(4)));
  EXPECT_EQ(net::diameter(t), 3u);
}

TEST(Address, FormatsAndParses) {
  const net::Address a(0x0a000001, 32);
  EXPECT_EQ(a.to_string(), "10.0.0.1");
  EXPECT_EQ(net::parse_address("10.0.0.1", 32), a);
  EXPECT_EQ(a.masked(8), net::Address(0x0a000000, 32));
  EXPECT_FALSE(net::parse_address("10.0.0", 32).has_value());
}

TEST(Rng, DerivedSeedsSeparateStreams) {
  EXPECT_NE(net::derive_seed(1, "a"), net::derive_seed(1, "b"));
  EXPECT_NE(net::derive_seed(1, 16, 100), net::derive_seed(1, 32, 100));
  EXPECT_EQ(net::derive_seed(9, "x"), net::derive_seed(9, "x"));
  net::Rng r(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.uniform(7), 7u);
}

TEST(Simulator, DeliversInTimeThenSendOrder) {
  auto t = build(net::TopologyKind::chain, 5);
  net::Simulator<int> sim(t);
  std::vector<int> order;
  sim.set_handler([&](auto&, net::Message<int>& m) { order.push_back(m.payload); });
  const auto op = sim.begin_op();
  sim.send(NodeId(0), NodeId(4), op, 1);  // arrives at t=4
  sim.send(NodeId(0), NodeId(1), op, 2);  // t=1
  sim.send(NodeId(2), NodeId(3), op, 3);  // t=1, queued later
  sim.run();
  EXPECT_EQ(order, (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(sim.op_stats(op).links, 6u);
  EXPECT_EQ(sim.now(), 4u);
}

TEST(Simulator, EventBudgetStopsLivelock) {
  auto t = build(net::TopologyKind::chain, 2);
  net::SimConfig cfg;
  cfg.event_budget = 100;
  net::Simulator<int> sim(t, cfg);
  sim.set_handler([](auto& s, net::Message<int>& m) { s.send(m.dst, m.src, m.op, 0); });
  sim.send(NodeId(0), NodeId(1), sim.begin_op(), 0);
  EXPECT_THROW(sim.run(), net::EventBudgetExceeded);
}

TEST(Simulator, DropsMessagesWhosePathBroke) {
  auto t = build(net::TopologyKind::chain, 4);
  net::Simulator<int> sim(t);
  int delivered = 0;
  sim.set_handler([&](auto&, net::Message<int>&) { ++delivered; });
  const auto op = sim.begin_op();
  sim.send(NodeId(0), NodeId(3), op, 0);
  sim.schedule_change(1, net::JoinChange{{NodeId(0), NodeId(3)}, std::nullopt}, nullptr);
  sim.schedule_change(2, net::LeaveChange{NodeId(2)}, nullptr);
  sim.run();
  EXPECT_EQ(delivered, 0);
  EXPECT_EQ(sim.op_stats(op).dropped, 1u);
}

TEST(TraceLog, DigestIsOrderSensitive) {
  net::TraceLog a(true), b(true), c(true);
  const net::LinkId l0(0), l1(1);
  a.append(1, NodeId(0), NodeId(1), 1, std::span(&l0, 1));
  a.append(2, NodeId(1), NodeId(2), 1, std::span(&l1, 1));
  b.append(1, NodeId(0), NodeId(1), 1, std::span(&l0, 1));
  b.append(2, NodeId(1), NodeId(2), 1, std::span(&l1, 1));
  c.append(2, NodeId(1), NodeId(2), 1, std::span(&l1, 1));
  c.append(1, NodeId(0), NodeId(1), 1, std::span(&l0, 1));
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_EQ(a.serialize(), b.serialize());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.total_links(), 2u);
}
