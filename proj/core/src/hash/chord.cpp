#include "dloc/hash/chord.hpp"

#include <algorithm>
#include <sstream>

namespace dloc::hash {

ChordDht::ChordDht(net::Topology& topology, net::SimConfig sim, ChordParams params)
    : SimulatedProtocol(topology, sim), ring_(Keyspace(params.keyspace_bits)) {
  for (NodeId node : topology.nodes()) place(node, ring_.add(node));
  rebuild_fingers();
}

void ChordDht::place(NodeId node, Key key) {
  if (keys_.size() <= node.value) {
    keys_.resize(node.value + 1);
    fingers_.resize(node.value + 1);
    record_count_.resize(node.value + 1, 0);
  }
  keys_[node.value] = key;
}

std::vector<NodeId> ChordDht::rebuild_fingers() {
  std::vector<NodeId> changed;
  const unsigned m = keyspace().bits();
  for (const RingMember& member : ring_.members()) {
    std::vector<NodeId> table(m);
    for (unsigned i = 0; i < m; ++i) {
      table[i] = ring_.successor(keyspace().add(member.key, std::uint64_t{1} << i));
    }
    auto& current = fingers_[member.node.value];
    if (current != table) {
      changed.push_back(member.node);
      current = std::move(table);
    }
  }
  return changed;
}

std::uint64_t ChordDht::rebalance() {
  std::uint64_t moved = 0;
  for (const auto& [data, key] : record_keys_) {
    const NodeId owner = ring_.successor(key);
    auto it = holdings_.find(data);
    if (it->second == owner) continue;
    if (it->second.value < record_count_.size() && record_count_[it->second.value] > 0) {
      --record_count_[it->second.value];
    }
    ++record_count_[owner.value];
    it->second = owner;
    ++moved;
  }
  return moved;
}

bool ChordDht::owns(NodeId node, Key k) const {
  if (ring_.size() == 1) return true;
  const Key own = key_of(node);
  auto it = std::lower_bound(ring_.members().begin(), ring_.members().end(), own,
                             [](const RingMember& m, Key key) { return m.key < key; });
  const auto& members = ring_.members();
  const std::size_t i = static_cast<std::size_t>(it - members.begin());
  const Key pred = members[(i + members.size() - 1) % members.size()].key;
  return keyspace().in_arc(k, pred, own);
}

NodeId ChordDht::closest_preceding(NodeId node, Key k) const {
  const Key own = key_of(node);
  const std::uint64_t span = keyspace().distance(own, k);
  const auto& table = fingers_[node.value];
  for (std::size_t i = table.size(); i-- > 0;) {
    const std::uint64_t d = keyspace().distance(own, key_of(table[i]));
    if (d != 0 && d < span) return table[i];
  }
  return table.front();
}

proto::PlacementOutcome ChordDht::store(const proto::PlacementRequest& request) {
  const Key k = keyspace().hash(request.data.str());
  const NodeId owner = ring_.successor(k);
  if (auto old = holdings_.find(request.data); old != holdings_.end()) --record_count_[old->second.value];
  holdings_.insert_or_assign(request.data, owner);
  record_keys_.insert_or_assign(request.data, k);
  ++record_count_[owner.value];
  proto::PlacementOutcome out;
  out.stored_at = owner;
  out.placement_honored = !request.preferred_node || *request.preferred_node == owner;
  out.name_after_move = proto::NameStability::changes;
  return out;
}

proto::LookupTrace ChordDht::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  const Key k = keyspace().hash(data.str());
  NodeId current = origin;
  // Greedy routing converges in at most n overlay hops.
  for (std::size_t guard = 0; guard <= ring_.size() && !owns(current, k); ++guard) {
    const NodeId succ = fingers_[current.value].front();
    const NodeId next = keyspace().in_arc(k, key_of(current), key_of(succ)) ? succ : closest_preceding(current, k);
    sim_.send(current, next, trace.op, 0);
    sim_.run();
    ++trace.requests;
    ++trace.hops;
    current = next;
  }
  fill_from_sim(trace);
  if (holds(current, data)) {
    trace.success = true;
    trace.resolved_at = current;
  }
  return trace;
}

void ChordDht::notify(NodeId from, const std::vector<NodeId>& to, net::OpId op) {
  for (NodeId n : to) {
    if (n != from && topology_.contains(n)) sim_.send(from, n, op, 0);
  }
  sim_.run();
}

proto::ReconfigTrace ChordDht::on_topology_change(const net::ChangeNotice& notice) {
  proto::ReconfigTrace r;
  const net::OpId op = sim_.begin_op();
  const NodeId subject = notice.subject;
  if (std::holds_alternative<net::JoinChange>(notice.change)) {
    Key key;
    if (next_join_key_) {
      key = *next_join_key_;
      ring_.add_at(subject, key);
      next_join_key_.reset();
    } else {
      key = ring_.add(subject);
    }
    place(subject, key);
    auto changed = rebuild_fingers();
    std::erase(changed, subject);  // the joiner builds its own table
    notify(subject, changed, op);
    r.tables_updated = changed.size();
    r.messages = changed.size();
    r.records_moved = rebalance();
    if (r.records_moved > 0) {
      sim_.send(ring_.successor(keyspace().add(key, 1)), subject, op, 0);
      sim_.run();
      ++r.messages;
    }
  } else if (std::holds_alternative<net::LeaveChange>(notice.change)) {
    // Graceful departure: the successor takes over the records and tells
    // every node whose fingers pointed at the leaver.
    ring_.remove(subject);
    auto changed = rebuild_fingers();
    const NodeId heir = ring_.successor(key_of(subject));
    notify(heir, changed, op);
    r.tables_updated = changed.size();
    r.messages = changed.size();
    r.records_moved = rebalance();
    if (subject.value < record_count_.size()) record_count_[subject.value] = 0;
    if (r.records_moved > 0) ++r.messages;
    fingers_[subject.value].clear();
  } else {
    // Fingers are node ids, but peers cache the address behind them.
    std::vector<NodeId> holders;
    for (const RingMember& m : ring_.members()) {
      const auto& table = fingers_[m.node.value];
      if (m.node != subject && std::find(table.begin(), table.end(), subject) != table.end()) {
        holders.push_back(m.node);
      }
    }
    notify(subject, holders, op);
    r.messages = holders.size();
    r.tables_updated = holders.size();
  }
  return r;
}

proto::TableStats ChordDht::table_stats() const {
  proto::TableStats s;
  double total = 0;
  for (const RingMember& m : ring_.members()) {
    const std::uint64_t size = fingers_[m.node.value].size() + record_count_[m.node.value];
    s.max_size = std::max(s.max_size, size);
    total += static_cast<double>(size);
    ++s.table_count;
  }
  s.mean_size = s.table_count == 0 ? 0.0 : total / static_cast<double>(s.table_count);
  return s;
}

std::size_t ChordDht::records_at(NodeId node) const {
  return node.value < record_count_.size() ? record_count_[node.value] : 0;
}

DataId ChordDht::name_for(std::string_view local_name, NodeId target) {
  NameSearch s = search_name(ring_, local_name, target, 64 * keyspace().size());
  last_trials_ = s.trials;
  return DataId(std::move(s.name));
}

proto::PlacementOutcome ChordDht::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  const std::string& full = data.str();
  const std::string local = full.substr(0, full.find('~'));
  DataId renamed = name_for(local, to);
  if (auto it = holdings_.find(data); it != holdings_.end()) {
    --record_count_[it->second.value];
    holdings_.erase(it);
    record_keys_.erase(data);
  }
  proto::PlacementOutcome out = store(proto::PlacementRequest{renamed, to});
  out.name_after_move = renamed == data ? proto::NameStability::stable : proto::NameStability::changes;
  out.stored_as = renamed;
  return out;
}

std::string ChordDht::finger_dump() const {
  std::ostringstream out;
  for (const RingMember& m : ring_.members()) {
    const auto& table = fingers_[m.node.value];
    for (std::size_t i = 0; i < table.size(); ++i) {
      out << m.node.value << ' ' << i << ' ' << table[i].value << '\n';
    }
  }
  return out.str();
}

}  // namespace dloc::hash
