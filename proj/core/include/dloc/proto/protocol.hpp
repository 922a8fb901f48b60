#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dloc/net/simulator.hpp"
#include "dloc/net/topology.hpp"
#include "dloc/proto/types.hpp"

namespace dloc::proto {

/// The uniform contract every data-location protocol implements. A protocol
/// instance is bound to one Topology that the harness owns and mutates; the
/// harness calls on_topology_change after each apply_change.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string_view name() const = 0;

  virtual PlacementOutcome store(const PlacementRequest& request) = 0;

  /// Failure is a legal outcome, reported through LookupTrace::success.
  virtual LookupTrace locate(const DataId& data, NodeId origin) = 0;

  virtual ReconfigTrace on_topology_change(const net::ChangeNotice& notice) = 0;

  /// Runs background dissemination (anti-entropy...) to quiescence.
  virtual void settle() {}

  virtual TableStats table_stats() const = 0;

  virtual NamingForm naming_form() const = 0;

  /// A name under which data ends up on `target` when stored with this
  /// protocol. Hash protocols have to search for it.
  virtual DataId name_for(std::string_view local_name, NodeId target) = 0;

  /// Moves stored data to another node, renaming it when the protocol needs to.
  virtual PlacementOutcome relocate(const DataId& data, NodeId to) = 0;

  virtual const net::SimCore& sim() const = 0;
};

/// Shared plumbing: the simulator and the record of where each piece of data
/// physically lives.
template <class Payload>
class SimulatedProtocol : public Protocol {
 public:
  const net::SimCore& sim() const override { return sim_; }

 protected:
  SimulatedProtocol(net::Topology& topology, net::SimConfig config)
      : topology_(topology), sim_(topology, config) {}

  /// Node holding `data` locally, if it is still alive.
  std::optional<NodeId> holder_of(const DataId& data) const {
    auto it = holdings_.find(data);
    if (it == holdings_.end() || !topology_.contains(it->second)) return std::nullopt;
    return it->second;
  }

  bool holds(NodeId node, const DataId& data) const {
    auto h = holder_of(data);
    return h && *h == node;
  }

  /// Lookup answered from the origin's own storage.
  LookupTrace local_hit(NodeId origin) {
    LookupTrace t;
    t.op = sim_.begin_op();
    t.success = true;
    t.resolved_at = origin;
    return t;
  }

  void fill_from_sim(LookupTrace& trace) const { trace.links_used = sim_.op_stats(trace.op).links; }

  net::Topology& topology_;
  net::Simulator<Payload> sim_;
  std::unordered_map<DataId, NodeId> holdings_;
};

/// Deterministic placement used when a request carries no preferred node.
NodeId default_placement(const net::Topology& topology, const DataId& data);

std::uint64_t stable_name_hash(std::string_view name);

}  // namespace dloc::proto
