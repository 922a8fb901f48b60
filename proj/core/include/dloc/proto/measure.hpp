#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dloc/net/simulator.hpp"
#include "dloc/net/topology.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::proto {

struct ProtocolContext {
  net::Topology& topology;
  net::SimConfig sim;
  std::uint64_t seed;
};

using ProtocolFactory = std::function<std::unique_ptr<Protocol>(const ProtocolContext&)>;

struct Workload {
  std::size_t objects = 100;   // d
  std::size_t lookups = 1000;  // q
  std::size_t changes = 8;     // c; alternating join / leave of the joined node
  std::size_t join_links = 2;
  /// Replaces the generated join/leave pairs when non-empty.
  std::vector<net::TopologyChange> script;
};

/// Aggregated measurements for one (protocol, n, d) point. The first nine
/// fields are the CSV contract; the rest feed the audit.
struct MetricsRecord {
  std::string protocol;
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  std::uint64_t max_table_size = 0;
  std::uint64_t table_count = 0;
  double mean_lookup_requests = 0.0;
  double mean_links_used = 0.0;
  std::uint64_t reconfig_messages = 0;
  bool manual_intervention = false;

  double mean_table_size = 0.0;
  double mean_hops = 0.0;
  double lookup_success_rate = 0.0;
  std::uint64_t lookups = 0;
  std::uint64_t changes = 0;
  std::uint64_t records_moved = 0;
  double hotspot_share = 0.0;  // largest share of lookup messages received by one node
  std::uint64_t events = 0;
  std::uint64_t trace_digest = 0;

  double reconfig_messages_per_change() const;
  double records_moved_per_change() const;
};

inline constexpr const char* kMetricsCsvHeader =
    "protocol,n,d,max_table_size,table_count,mean_lookup_requests,mean_links_used,"
    "reconfig_messages,manual_intervention";

std::string to_csv_row(const MetricsRecord& record);

/// Runs one workload against a fresh protocol instance on a fresh topology:
/// store d objects, settle, q lookups from uniform origins, then c changes.
/// Deterministic for a fixed seed. Propagates net::EventBudgetExceeded.
MetricsRecord measure(std::string_view protocol_label, const ProtocolFactory& factory,
                      const net::TopologySpec& topology, std::size_t n, const Workload& workload,
                      std::uint64_t seed, net::SimConfig sim = {}, unsigned address_width = 32);

}  // namespace dloc::proto
