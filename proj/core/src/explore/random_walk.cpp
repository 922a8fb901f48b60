#include "dloc/explore/random_walk.hpp"

namespace dloc::explore {

RandomWalk::RandomWalk(net::Topology& topology, net::SimConfig sim, std::uint64_t seed, ExploreParams params)
    : SimulatedProtocol(topology, sim), seed_(seed), params_(params), rng_(seed) {
  sim_.set_handler([this](net::Simulator<WalkMessage>&, net::Message<WalkMessage>& m) {
    const NodeId here = m.dst;
    if (visited_[here.value] != current_query_) {
      visited_[here.value] = current_query_;
      ++reached_;
    }
    if (holds(here, *wanted_)) {
      if (!found_) found_ = here;
      return;
    }
    if (m.payload.remaining > 0) step(here, m.hop_path.front(), m.payload.remaining - 1, m.op);
  });
}

void RandomWalk::step(NodeId at, std::optional<net::LinkId> arrived_by, std::uint32_t remaining, net::OpId op) {
  const auto nbs = topology_.neighbors(at);
  if (nbs.empty()) return;
  if (arrived_by && nbs.size() > 1) {
    // (the arrival link is always present: delivery revalidates the path)
    // Uniform over the other links: skip the arrival slot.
    std::size_t back = 0;
    while (back < nbs.size() && nbs[back].link != *arrived_by) ++back;
    std::size_t pick = rng_.uniform(nbs.size() - 1);
    if (pick >= back) ++pick;
    sim_.send_over(at, nbs[pick].link, op, WalkMessage{remaining});
    return;
  }
  sim_.send_over(at, nbs[rng_.uniform(nbs.size())].link, op, WalkMessage{remaining});
}

proto::PlacementOutcome RandomWalk::store(const proto::PlacementRequest& request) {
  const NodeId at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
  if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
  holdings_.insert_or_assign(request.data, at);
  return proto::PlacementOutcome{at, true, true, proto::NameStability::stable, std::nullopt};
}

proto::LookupTrace RandomWalk::locate(const DataId& data, NodeId origin) {
  const auto ttl = params_.ttl.value_or(static_cast<std::uint32_t>(topology_.node_count()));
  const auto walkers = params_.walkers_per_degree ? static_cast<std::uint32_t>(topology_.degree(origin))
                                                  : params_.walkers;
  return locate(ExploreQuery{++next_query_, data, ttl, walkers}, origin);
}

proto::LookupTrace RandomWalk::locate(const ExploreQuery& query, NodeId origin) {
  if (holds(origin, query.data)) return local_hit(origin);
  next_query_ = std::max(next_query_, query.query_id);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  if (visited_.size() < topology_.node_capacity()) visited_.resize(topology_.node_capacity(), 0);
  // Each query draws from its own stream so results do not depend on history.
  rng_ = net::Rng(net::derive_seed(seed_, query.query_id));
  current_query_ = query.query_id + 1;
  visited_[origin.value] = current_query_;
  wanted_ = &query.data;
  reached_ = 0;
  found_.reset();
  if (query.ttl > 0) {
    for (std::uint32_t w = 0; w < query.walkers; ++w) step(origin, std::nullopt, query.ttl - 1, trace.op);
  }
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

DataId RandomWalk::name_for(std::string_view local_name, NodeId) { return DataId(std::string(local_name)); }

proto::PlacementOutcome RandomWalk::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.insert_or_assign(data, to);
  return proto::PlacementOutcome{to, true, true, proto::NameStability::stable, data};
}

}  // namespace dloc::explore
