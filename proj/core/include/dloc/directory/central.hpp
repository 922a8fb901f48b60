#pragma once

#include <map>

#include "dloc/proto/protocol.hpp"

namespace dloc::directory {

using proto::DataId;
using proto::NodeId;

/// Maps every data identifier to the node holding it. Owned by one node.
struct DirectoryTable {
  NodeId owner;
  std::map<DataId, NodeId> entries;
};

struct CentralParams {
  /// Defaults to the lowest live node id (one end of a chain).
  std::optional<NodeId> server;
};

/// A single directory server queried by every client.
class CentralDirectory final : public proto::SimulatedProtocol<int> {
 public:
  CentralDirectory(net::Topology& topology, net::SimConfig sim, CentralParams params = {});

  std::string_view name() const override { return "central"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::free; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  NodeId server() const { return table_.owner; }
  const DirectoryTable& table() const { return table_; }

 private:
  void notify_server(NodeId from);

  DirectoryTable table_;
  bool server_lost_ = false;
};

}  // namespace dloc::directory
