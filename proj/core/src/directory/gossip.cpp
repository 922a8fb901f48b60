#include "dloc/directory/gossip.hpp"

namespace dloc::directory {

GossipDirectory::GossipDirectory(net::Topology& topology, net::SimConfig sim)
    : SimulatedProtocol(topology, sim) {
  sim_.set_handler([this](net::Simulator<GossipSnapshot>&, net::Message<GossipSnapshot>& m) {
    ensure_slot(m.dst);
    auto& mine = tables_[m.dst.value];
    const auto& theirs = *m.payload;
    if (mine.size() < theirs.size()) mine.resize(theirs.size());
    for (std::size_t i = 0; i < theirs.size(); ++i) {
      if (theirs[i].version > mine[i].version) {
        if (!mine[i].known()) ++known_[m.dst.value];
        mine[i] = theirs[i];
        changed_ = true;
      }
    }
  });
}

void GossipDirectory::ensure_slot(NodeId node) {
  if (tables_.size() <= node.value) {
    tables_.resize(node.value + 1);
    known_.resize(node.value + 1, 0);
  }
}

std::size_t GossipDirectory::intern(const DataId& data) {
  auto [it, inserted] = objects_.try_emplace(data, objects_.size());
  return it->second;
}

void GossipDirectory::learn(NodeId node, std::size_t object, NodeId location) {
  ensure_slot(node);
  auto& table = tables_[node.value];
  if (table.size() <= object) table.resize(object + 1);
  // A fresh local fact outranks every version seen so far for the object.
  if (latest_version_.size() <= object) latest_version_.resize(object + 1, 0);
  const std::uint32_t version = ++latest_version_[object];
  if (!table[object].known()) ++known_[node.value];
  table[object] = GossipEntry{location, version};
}

proto::PlacementOutcome GossipDirectory::store(const proto::PlacementRequest& request) {
  const NodeId at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
  if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
  holdings_.insert_or_assign(request.data, at);
  learn(at, intern(request.data), at);
  return proto::PlacementOutcome{at, true, true, proto::NameStability::stable, std::nullopt};
}

bool GossipDirectory::run_round() {
  changed_ = false;
  const net::OpId op = sim_.begin_op();
  for (NodeId node : topology_.nodes()) {
    ensure_slot(node);
    auto snapshot = std::make_shared<const std::vector<GossipEntry>>(tables_[node.value]);
    for (const net::Neighbor& nb : topology_.neighbors(node)) {
      sim_.send_over(node, nb.link, op, snapshot);
    }
  }
  sim_.run();
  ++rounds_;
  return changed_;
}

bool GossipDirectory::converged() const {
  const auto nodes = topology_.nodes();
  if (nodes.empty()) return true;
  auto table_of = [&](NodeId n) -> std::vector<GossipEntry> {
    std::vector<GossipEntry> t = n.value < tables_.size() ? tables_[n.value] : std::vector<GossipEntry>{};
    t.resize(objects_.size());
    return t;
  };
  const auto reference = table_of(nodes.front());
  for (NodeId n : nodes) {
    const auto t = table_of(n);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].version != reference[i].version || t[i].node != reference[i].node) return false;
    }
  }
  return true;
}

void GossipDirectory::settle() {
  // A round that changes nothing means every table already equals the union
  // of its neighbors', which on a connected graph means all are equal.
  const std::size_t cap = topology_.node_count() + 2;
  for (std::size_t i = 0; i < cap; ++i) {
    if (!run_round()) break;
  }
}

proto::LookupTrace GossipDirectory::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  if (auto where = known_location(origin, data); where && topology_.contains(*where)) {
    trace.success = true;
    trace.resolved_at = *where;
  }
  return trace;
}

proto::ReconfigTrace GossipDirectory::on_topology_change(const net::ChangeNotice& notice) {
  // Membership changes are absorbed by the ongoing rounds; no dedicated traffic.
  proto::ReconfigTrace r;
  if (std::holds_alternative<net::LeaveChange>(notice.change)) {
    ensure_slot(notice.subject);
    tables_[notice.subject.value].clear();
    known_[notice.subject.value] = 0;
  } else if (std::holds_alternative<net::JoinChange>(notice.change)) {
    ensure_slot(notice.subject);
  }
  return r;
}

proto::TableStats GossipDirectory::table_stats() const {
  proto::TableStats s;
  double total = 0;
  for (NodeId n : topology_.nodes()) {
    const std::size_t k = n.value < known_.size() ? known_[n.value] : 0;
    s.max_size = std::max<std::uint64_t>(s.max_size, k);
    total += static_cast<double>(k);
    ++s.table_count;
  }
  s.mean_size = s.table_count == 0 ? 0.0 : total / static_cast<double>(s.table_count);
  return s;
}

DataId GossipDirectory::name_for(std::string_view local_name, NodeId) {
  return DataId(std::string(local_name));
}

proto::PlacementOutcome GossipDirectory::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.insert_or_assign(data, to);
  learn(to, intern(data), to);
  return proto::PlacementOutcome{to, true, true, proto::NameStability::stable, data};
}

std::optional<NodeId> GossipDirectory::known_location(NodeId node, const DataId& data) const {
  auto it = objects_.find(data);
  if (it == objects_.end() || node.value >= tables_.size()) return std::nullopt;
  const auto& table = tables_[node.value];
  if (it->second >= table.size() || !table[it->second].known()) return std::nullopt;
  return table[it->second].node;
}

std::size_t GossipDirectory::known_count(NodeId node) const {
  return node.value < known_.size() ? known_[node.value] : 0;
}

}  // namespace dloc::directory
