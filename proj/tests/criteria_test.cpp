#include <gtest/gtest.h>

#include "criteria.hpp"

using namespace dloc;

TEST(Criteria, ChordProperties) {
  const auto o = check::chord_properties();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, GossipConvergence) {
  const auto o = check::gossip_convergence();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, DnsResolutionAndFailures) {
  const auto o = check::dns_properties();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, AggregationSafety) {
  const auto o = check::aggregation_safety();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, Flooding) {
  const auto o = check::flooding_properties();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, RandomWalk) {
  const auto o = check::random_walk_properties();
  EXPECT_TRUE(o.pass) << o.summary();
}

TEST(Criteria, FitSelfTest) {
  const auto o = check::fit_self_test();
  EXPECT_TRUE(o.pass) << o.summary();
}
