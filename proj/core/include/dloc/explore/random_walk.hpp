#pragma once

#include <vector>

#include "dloc/explore/explore.hpp"
#include "dloc/net/rng.hpp"
#include "dloc/proto/protocol.hpp"

namespace dloc::explore {

struct WalkMessage {
  std::uint32_t remaining = 0;  // hops the walker may still take
};

/// Random-walk search: each walker moves to a uniformly random neighbor,
/// never straight back over the link it arrived on unless that is the only
/// one, until it reaches a holder or runs out of hops. Walkers are
/// independent; revisits are allowed.
class RandomWalk final : public proto::SimulatedProtocol<WalkMessage> {
 public:
  RandomWalk(net::Topology& topology, net::SimConfig sim, std::uint64_t seed, ExploreParams params = {});

  std::string_view name() const override { return "random-walk"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice&) override { return {}; }
  proto::TableStats table_stats() const override { return {}; }
  proto::NamingForm naming_form() const override { return proto::NamingForm::free; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  proto::LookupTrace locate(const ExploreQuery& query, NodeId origin);

 private:
  void step(NodeId at, std::optional<net::LinkId> arrived_by, std::uint32_t remaining, net::OpId op);

  std::uint64_t seed_;
  ExploreParams params_;
  net::Rng rng_;
  std::uint64_t next_query_ = 0;
  std::vector<std::uint64_t> visited_;  // last query id that reached each slot
  std::uint64_t current_query_ = 0;
  const DataId* wanted_ = nullptr;
  std::uint64_t reached_ = 0;
  std::optional<NodeId> found_;
};

}  // namespace dloc::explore
