#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "dloc/proto/protocol.hpp"

namespace dloc::directory {

using proto::DataId;
using proto::NodeId;

/// One known location; version orders updates of the same object.
struct GossipEntry {
  NodeId node;
  std::uint32_t version = 0;  // 0 = unknown

  bool known() const { return version != 0; }
};

using GossipSnapshot = std::shared_ptr<const std::vector<GossipEntry>>;

/// Fully replicated directory kept in sync by synchronous push-pull
/// anti-entropy rounds: every node sends its whole table to every neighbor,
/// and merges what it receives, keeping the highest version per object.
class GossipDirectory final : public proto::SimulatedProtocol<GossipSnapshot> {
 public:
  GossipDirectory(net::Topology& topology, net::SimConfig sim);

  std::string_view name() const override { return "gossip"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  void settle() override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::free; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  /// Runs one synchronous round. Returns true when any table changed.
  bool run_round();
  /// True when every live node holds the same table.
  bool converged() const;
  std::size_t rounds_run() const { return rounds_; }

  /// Location `node` currently believes `data` has, if any.
  std::optional<NodeId> known_location(NodeId node, const DataId& data) const;
  std::size_t known_count(NodeId node) const;

 private:
  std::size_t intern(const DataId& data);
  void ensure_slot(NodeId node);
  void learn(NodeId node, std::size_t object, NodeId location);

  std::unordered_map<DataId, std::size_t> objects_;
  std::vector<std::vector<GossipEntry>> tables_;  // indexed by node slot
  std::vector<std::size_t> known_;
  std::vector<std::uint32_t> latest_version_;
  std::size_t rounds_ = 0;
  bool changed_ = false;
};

}  // namespace dloc::directory
