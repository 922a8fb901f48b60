#include "dloc/explore/flooding.hpp"

namespace dloc::explore {

Flooding::Flooding(net::Topology& topology, net::SimConfig sim, ExploreParams params)
    : SimulatedProtocol(topology, sim), params_(params) {
  sim_.set_handler([this](net::Simulator<FloodMessage>&, net::Message<FloodMessage>& m) {
    const NodeId here = m.dst;
    if (seen_[here.value] == m.payload.query_id) return;  // duplicate, dropped
    seen_[here.value] = m.payload.query_id;
    ++reached_;
    if (holds(here, *wanted_)) {
      if (!found_) found_ = here;
      return;
    }
    if (m.payload.remaining > 0) forward(here, m.src, m.payload.query_id, m.payload.remaining - 1, m.op);
  });
}

void Flooding::forward(NodeId at, std::optional<NodeId> except, std::uint64_t query_id,
                       std::uint32_t remaining, net::OpId op) {
  for (const net::Neighbor& nb : topology_.neighbors(at)) {
    if (except && nb.node == *except) continue;
    sim_.send_over(at, nb.link, op, FloodMessage{query_id, remaining});
  }
}

proto::PlacementOutcome Flooding::store(const proto::PlacementRequest& request) {
  const NodeId at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
  if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
  holdings_.insert_or_assign(request.data, at);
  return proto::PlacementOutcome{at, true, true, proto::NameStability::stable, std::nullopt};
}

proto::LookupTrace Flooding::locate(const DataId& data, NodeId origin) {
  const auto ttl = params_.ttl.value_or(static_cast<std::uint32_t>(topology_.node_count()));
  return locate(ExploreQuery{++next_query_, data, ttl, 1}, origin);
}

proto::LookupTrace Flooding::locate(const ExploreQuery& query, NodeId origin) {
  if (holds(origin, query.data)) return local_hit(origin);
  next_query_ = std::max(next_query_, query.query_id);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  if (seen_.size() < topology_.node_capacity()) seen_.resize(topology_.node_capacity(), 0);
  // Query ids start at 1 so slot value 0 never matches.
  const std::uint64_t qid = query.query_id + 1;
  seen_[origin.value] = qid;
  wanted_ = &query.data;
  reached_ = 0;
  found_.reset();
  if (query.ttl > 0) forward(origin, std::nullopt, qid, query.ttl - 1, trace.op);
  sim_.run();
  wanted_ = nullptr;
  fill_from_sim(trace);
  trace.requests = reached_;
  trace.hops = trace.links_used;
  if (found_) {
    trace.success = true;
    trace.resolved_at = found_;
  }
  return trace;
}

DataId Flooding::name_for(std::string_view local_name, NodeId) { return DataId(std::string(local_name)); }

proto::PlacementOutcome Flooding::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.insert_or_assign(data, to);
  return proto::PlacementOutcome{to, true, true, proto::NameStability::stable, data};
}

}  // namespace dloc::explore
