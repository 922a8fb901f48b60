#pragma once

#include <vector>

#include "dloc/explore/explore.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::explore {

struct FloodMessage {
  std::uint64_t query_id = 0;
  std::uint32_t remaining = 0;  // hops the query may still travel
};

/// TTL-bounded flooding with duplicate suppression: each node forwards a
/// query once, to every neighbor except the one it came from. A holder
/// answers and stops forwarding. No location state at all.
class Flooding final : public proto::SimulatedProtocol<FloodMessage> {
 public:
  Flooding(net::Topology& topology, net::SimConfig sim, ExploreParams params = {});

  std::string_view name() const override { return "flooding"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice&) override { return {}; }
  proto::TableStats table_stats() const override { return {}; }
  proto::NamingForm naming_form() const override { return proto::NamingForm::free; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  proto::LookupTrace locate(const ExploreQuery& query, NodeId origin);

 private:
  void forward(NodeId at, std::optional<NodeId> except, std::uint64_t query_id,
               std::uint32_t remaining, net::OpId op);

  ExploreParams params_;
  std::uint64_t next_query_ = 0;
  std::vector<std::uint64_t> seen_;  // last query id seen, by node slot
  const DataId* wanted_ = nullptr;
  net::OpId op_ = 0;
  std::uint64_t reached_ = 0;
  std::optional<NodeId> found_;
};

}  // namespace dloc::explore
