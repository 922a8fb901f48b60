#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dloc/hash/ring.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::hash {

using proto::DataId;

/// Pins names to a node. `pattern` is an exact name, or a prefix when it ends in '*'.
struct PlacementRule {
  std::string pattern;
  NodeId target;

  bool matches(const DataId& data) const;
};

struct ConsistentHashingParams {
  unsigned keyspace_bits = 16;
  /// Honour preferred nodes by installing a rule per stored name.
  bool rule_placement = false;
};

/// Full-view consistent hashing: every node holds the whole ring (and the
/// replicated placement rules) and reaches the owner of a key in one request.
class ConsistentHashing final : public proto::SimulatedProtocol<int> {
 public:
  ConsistentHashing(net::Topology& topology, net::SimConfig sim, ConsistentHashingParams params = {});

  std::string_view name() const override { return "consistent-hashing"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::hash_inverse; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  /// Stores under a rule pinning the name to the preferred node. The rule is
  /// replicated to every node, so it costs n-1 messages and one table entry per node.
  proto::PlacementOutcome store_with_rule(const proto::PlacementRequest& request);
  /// Appends a rule (first match wins) and replicates it.
  proto::ReconfigTrace add_rule(PlacementRule rule, NodeId from);

  const RingView& ring() const { return ring_; }
  const std::vector<PlacementRule>& rules() const { return rules_; }
  /// Node responsible for the name: first matching live rule, else the ring successor.
  NodeId owner_of(const DataId& data) const;
  std::uint64_t last_name_trials() const { return last_trials_; }

 private:
  std::uint64_t broadcast(NodeId from, net::OpId op);
  std::uint64_t rebalance();

  ConsistentHashingParams params_;
  RingView ring_;
  std::vector<PlacementRule> rules_;
  std::uint64_t last_trials_ = 0;
};

}  // namespace dloc::hash
