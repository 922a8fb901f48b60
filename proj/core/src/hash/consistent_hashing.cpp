#include "dloc/hash/consistent_hashing.hpp"

#include <algorithm>

namespace dloc::hash {

bool PlacementRule::matches(const DataId& data) const {
  if (!pattern.empty() && pattern.back() == '*') {
    return data.str().compare(0, pattern.size() - 1, pattern, 0, pattern.size() - 1) == 0;
  }
  return data.str() == pattern;
}

ConsistentHashing::ConsistentHashing(net::Topology& topology, net::SimConfig sim,
                                     ConsistentHashingParams params)
    : SimulatedProtocol(topology, sim), params_(params), ring_(Keyspace(params.keyspace_bits)) {
  for (NodeId node : topology.nodes()) ring_.add(node);
}

NodeId ConsistentHashing::owner_of(const DataId& data) const {
  for (const PlacementRule& rule : rules_) {
    if (rule.matches(data) && topology_.contains(rule.target)) return rule.target;
  }
  return ring_.successor(ring_.keyspace().hash(data.str()));
}

std::uint64_t ConsistentHashing::broadcast(NodeId from, net::OpId op) {
  std::uint64_t sent = 0;
  for (NodeId n : topology_.nodes()) {
    if (n == from) continue;
    sim_.send(from, n, op, 0);
    ++sent;
  }
  sim_.run();
  return sent;
}

std::uint64_t ConsistentHashing::rebalance() {
  std::uint64_t moved = 0;
  for (auto& [data, holder] : holdings_) {
    const NodeId owner = owner_of(data);
    if (holder != owner) {
      holder = owner;
      ++moved;
    }
  }
  return moved;
}

proto::PlacementOutcome ConsistentHashing::store(const proto::PlacementRequest& request) {
  if (params_.rule_placement && request.preferred_node) return store_with_rule(request);
  const NodeId owner = owner_of(request.data);
  holdings_.insert_or_assign(request.data, owner);
  proto::PlacementOutcome out;
  out.stored_at = owner;
  out.placement_honored = !request.preferred_node || *request.preferred_node == owner;
  out.name_after_move = proto::NameStability::changes;
  return out;
}

proto::ReconfigTrace ConsistentHashing::add_rule(PlacementRule rule, NodeId from) {
  rules_.push_back(std::move(rule));
  proto::ReconfigTrace r;
  r.messages = broadcast(from, sim_.begin_op());
  r.tables_updated = topology_.node_count();
  return r;
}

proto::PlacementOutcome ConsistentHashing::store_with_rule(const proto::PlacementRequest& request) {
  const NodeId target = request.preferred_node.value_or(owner_of(request.data));
  if (!topology_.contains(target)) throw net::InvalidScenario("preferred node is not live");
  if (owner_of(request.data) != target) add_rule(PlacementRule{request.data.str(), target}, target);
  holdings_.insert_or_assign(request.data, target);
  return proto::PlacementOutcome{target, true, true, proto::NameStability::stable, std::nullopt};
}

proto::LookupTrace ConsistentHashing::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  const NodeId owner = owner_of(data);
  if (owner != origin) {
    sim_.send(origin, owner, trace.op, 0);
    sim_.run();
    trace.requests = 1;
    trace.hops = 1;
  }
  fill_from_sim(trace);
  if (holds(owner, data)) {
    trace.success = true;
    trace.resolved_at = owner;
  }
  return trace;
}

proto::ReconfigTrace ConsistentHashing::on_topology_change(const net::ChangeNotice& notice) {
  proto::ReconfigTrace r;
  const net::OpId op = sim_.begin_op();
  NodeId announcer = notice.subject;
  if (std::holds_alternative<net::JoinChange>(notice.change)) {
    ring_.add(notice.subject);
  } else if (std::holds_alternative<net::LeaveChange>(notice.change)) {
    const Key key = *ring_.key_of(notice.subject);
    ring_.remove(notice.subject);
    announcer = ring_.successor(key);
  }
  // The new view goes to every other node.
  r.messages = broadcast(announcer, op);
  r.tables_updated = topology_.node_count();
  if (!std::holds_alternative<net::ReaddressChange>(notice.change)) {
    r.records_moved = rebalance();
    if (r.records_moved > 0) ++r.messages;  // bulk transfer
  }
  return r;
}

proto::TableStats ConsistentHashing::table_stats() const {
  const auto size = static_cast<std::uint64_t>(ring_.size() + rules_.size());
  const auto count = static_cast<std::uint64_t>(topology_.node_count());
  return proto::TableStats{size, count, static_cast<double>(size)};
}

DataId ConsistentHashing::name_for(std::string_view local_name, NodeId target) {
  NameSearch s = search_name(ring_, local_name, target, 64 * ring_.keyspace().size());
  last_trials_ = s.trials;
  return DataId(std::move(s.name));
}

proto::PlacementOutcome ConsistentHashing::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.erase(data);
  if (params_.rule_placement) {
    std::erase_if(rules_, [&](const PlacementRule& rule) { return rule.pattern == data.str(); });
    proto::PlacementOutcome out = store_with_rule(proto::PlacementRequest{data, to});
    out.stored_as = data;
    return out;
  }
  const std::string& full = data.str();
  DataId renamed = name_for(full.substr(0, full.find('~')), to);
  holdings_.insert_or_assign(renamed, to);
  const auto stability = renamed == data ? proto::NameStability::stable : proto::NameStability::changes;
  return proto::PlacementOutcome{to, true, true, stability, renamed};
}

}  // namespace dloc::hash
