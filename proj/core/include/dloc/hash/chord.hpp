#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dloc/hash/ring.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::hash {

using proto::DataId;

struct ChordParams {
  unsigned keyspace_bits = 16;
};

/// Chord-style DHT. Every node keeps log2(N) fingers; finger i is the
/// successor of (own key + 2^i). Lookups are routed greedily through the
/// closest preceding finger; each overlay hop travels the physical shortest path.
class ChordDht final : public proto::SimulatedProtocol<int> {
 public:
  ChordDht(net::Topology& topology, net::SimConfig sim, ChordParams params = {});

  std::string_view name() const override { return "chord"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::hash_inverse; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  const RingView& ring() const { return ring_; }
  const Keyspace& keyspace() const { return ring_.keyspace(); }
  Key key_of(NodeId node) const { return keys_.at(node.value); }
  const std::vector<NodeId>& fingers(NodeId node) const { return fingers_.at(node.value); }
  /// "owner i target" lines (node ids), owners in key order.
  std::string finger_dump() const;
  NodeId successor(Key k) const { return ring_.successor(k); }
  std::size_t records_at(NodeId node) const;
  /// Names tried by the last name_for call.
  std::uint64_t last_name_trials() const { return last_trials_; }
  /// The next joining node takes this key instead of its hash.
  void set_next_join_key(Key key) { next_join_key_ = key; }

 private:
  void place(NodeId node, Key key);
  /// Recomputes every finger table; returns the nodes whose table changed.
  std::vector<NodeId> rebuild_fingers();
  /// Moves every record to its current successor; returns how many moved.
  std::uint64_t rebalance();
  bool owns(NodeId node, Key k) const;
  NodeId closest_preceding(NodeId node, Key k) const;
  void notify(NodeId from, const std::vector<NodeId>& to, net::OpId op);

  RingView ring_;
  std::vector<Key> keys_;                     // by node slot
  std::vector<std::vector<NodeId>> fingers_;  // by node slot
  std::unordered_map<DataId, Key> record_keys_;
  std::vector<std::size_t> record_count_;     // by node slot
  std::optional<Key> next_join_key_;
  std::uint64_t last_trials_ = 0;
};

}  // namespace dloc::hash
