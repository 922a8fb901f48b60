#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dloc/directory/route_table.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::directory {

using proto::DataId;

/// Splits "address/local" into its parts; nullopt when the prefix is not an
/// address of the given width.
std::optional<std::pair<Address, std::string>> parse_embedded_name(const DataId& name, unsigned width);
std::string embedded_name(Address destination, std::string_view local_name);

struct EmbeddedParams {
  bool aggregate = false;  // aggregate each table against the live addresses
};

/// Location embedded in the name: the identifier carries the holder's address
/// and the request is forwarded hop by hop by longest-prefix match. Routers
/// hold host routes to every other node; nothing recomputes them on its own.
class EmbeddedRouting final : public proto::SimulatedProtocol<Address> {
 public:
  EmbeddedRouting(net::Topology& topology, net::SimConfig sim, EmbeddedParams params = {});

  std::string_view name() const override { return "ip-routing"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::address_prefixed; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  /// Operator action: rebuilds every table from the current topology.
  proto::ReconfigTrace recompute_routes();

  const RouteTable& table(NodeId node) const { return tables_.at(node.value); }

 private:
  RouteTable build_table(NodeId node) const;

  EmbeddedParams params_;
  std::vector<RouteTable> tables_;  // by node slot
  // Set by the message handler while a request travels.
  std::optional<NodeId> reached_;
  std::uint64_t forwarded_ = 0;
};

}  // namespace dloc::directory
