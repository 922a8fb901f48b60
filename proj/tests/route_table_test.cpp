#include <gtest/gtest.h>

#include "dloc/directory/route_table.hpp"

using namespace dloc;
using directory::Prefix;
using directory::RouteTable;
using net::Address;
using net::NodeId;

namespace {

// Upper 64 bits of an IPv6 address.
Address v6(std::uint64_t high) { return Address(high, 64); }

}  // namespace

TEST(RouteTable, MostSpecificRouteWins) {
  RouteTable table(64);
  const NodeId router_a(1), router_b(2);
  table.set(Prefix(v6(0x20010db800010000), 64), router_a);  // 2001:db8:1::/64
  table.set(Prefix(v6(0x20010db800000000), 32), router_b);  // 2001:db8::/32
  EXPECT_EQ(table.lookup(v6(0x20010db800010000)), router_a);
  EXPECT_EQ(table.lookup(v6(0x20010db8ffff0000)), router_b);
  EXPECT_FALSE(table.lookup(v6(0x20020db800000000)).has_value());
  table.set_default(router_b);
  EXPECT_EQ(table.lookup(v6(0x20020db800000000)), router_b);
}

TEST(RouteTable, AssignKeepsTheLastDuplicate) {
  RouteTable table(8);
  table.assign({{Prefix(Address(0x80, 8), 1), NodeId(1)}, {Prefix(Address(0xc0, 8), 1), NodeId(2)}});
  EXPECT_EQ(table.size(), 1u);
  EXPECT_EQ(table.lookup(Address(0x80, 8)), NodeId(2));
}

TEST(Aggregate, SiblingsMerge) {
  RouteTable table(8);
  table.set(Prefix(Address(0x80, 8), 2), NodeId(1));  // 10*
  table.set(Prefix(Address(0xc0, 8), 2), NodeId(1));  // 11*
  const auto merged = directory::aggregate(table);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.routes()[0].prefix, Prefix(Address(0x80, 8), 1));
  EXPECT_EQ(merged.routes()[0].next_hop, NodeId(1));
}

TEST(Aggregate, DifferentNextHopsStaySeparate) {
  RouteTable table(8);
  table.set(Prefix(Address(0x80, 8), 2), NodeId(1));
  table.set(Prefix(Address(0xc0, 8), 2), NodeId(2));
  EXPECT_EQ(directory::aggregate(table), table);
}

TEST(Aggregate, NonSiblingsNeedLiveMode) {
  // 2001:db8:abcd:1234::/64 and 2001:db8:abcd:12ab::/64 via the same router.
  RouteTable table(64);
  const NodeId via(9);
  const Address a = v6(0x20010db8abcd1234), b = v6(0x20010db8abcd12ab);
  table.set(Prefix(a, 64), via);
  table.set(Prefix(b, 64), via);
  // Strict mode may not claim the rest of the /56.
  EXPECT_EQ(directory::aggregate(table).size(), 2u);
  const std::vector<Address> live{a, b};
  const auto merged = directory::aggregate(table, live);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.routes()[0].prefix, Prefix(v6(0x20010db8abcd1200), 56));
  EXPECT_EQ(merged.routes()[0].prefix.to_string(), "32.1.13.184.171.205.18.0/56");
  EXPECT_EQ(merged.lookup(a), via);
  EXPECT_EQ(merged.lookup(b), via);
}

TEST(Aggregate, ShadowedHoleIsPreserved) {
  RouteTable table(8);
  table.set(Prefix(Address(0x00, 8), 2), NodeId(1));  // 00*
  table.set(Prefix(Address(0x40, 8), 2), NodeId(1));  // 01*
  table.set(Prefix(Address(0x40, 8), 4), NodeId(2));  // 0100* elsewhere
  const auto merged = directory::aggregate(table);
  for (std::uint64_t x = 0; x < 256; ++x) EXPECT_EQ(merged.lookup(Address(x, 8)), table.lookup(Address(x, 8))) << x;
  EXPECT_EQ(merged.size(), 2u);
}

TEST(RouteTable, DumpIsSorted) {
  RouteTable table(8);
  table.set(Prefix(Address(0xc0, 8), 2), NodeId(3));
  table.set(Prefix(Address(0x00, 8), 1), NodeId(1));
  table.set_default(NodeId(0));
  EXPECT_EQ(table.dump(), "0/1 1\n192/2 3\ndefault 0\n");
}
