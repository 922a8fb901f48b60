#include "dloc/directory/central.hpp"

namespace dloc::directory {

CentralDirectory::CentralDirectory(net::Topology& topology, net::SimConfig sim, CentralParams params)
    : SimulatedProtocol(topology, sim) {
  const auto nodes = topology.nodes();
  if (nodes.empty()) throw net::InvalidScenario("central directory needs a node");
  table_.owner = params.server.value_or(nodes.front());
  if (!topology.contains(table_.owner)) throw net::InvalidScenario("central server is not a live node");
}

void CentralDirectory::notify_server(NodeId from) {
  if (from == table_.owner || !topology_.contains(from)) return;
  sim_.send(from, table_.owner, sim_.begin_op(), 0);
  sim_.run();
}

proto::PlacementOutcome CentralDirectory::store(const proto::PlacementRequest& request) {
  const NodeId at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
  if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
  holdings_.insert_or_assign(request.data, at);
  notify_server(at);
  table_.entries.insert_or_assign(request.data, at);
  return proto::PlacementOutcome{at, true, true, proto::NameStability::stable, std::nullopt};
}

proto::LookupTrace CentralDirectory::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  if (server_lost_ || !topology_.contains(table_.owner)) return trace;
  if (origin != table_.owner) {
    sim_.send(origin, table_.owner, trace.op, 0);
    sim_.run();
    trace.requests = 1;
    trace.hops = 1;
  }
  fill_from_sim(trace);
  auto it = table_.entries.find(data);
  if (it != table_.entries.end() && topology_.contains(it->second)) {
    trace.success = true;
    trace.resolved_at = it->second;
  }
  return trace;
}

proto::ReconfigTrace CentralDirectory::on_topology_change(const net::ChangeNotice& notice) {
  proto::ReconfigTrace r;
  if (notice.subject == table_.owner && std::holds_alternative<net::LeaveChange>(notice.change)) {
    server_lost_ = true;
    r.manual_intervention = true;
    return r;
  }
  // The joining, leaving or readdressed node tells the server; one message.
  if (std::holds_alternative<net::LeaveChange>(notice.change)) {
    for (auto it = table_.entries.begin(); it != table_.entries.end();) {
      if (it->second == notice.subject) {
        it = table_.entries.erase(it);
        ++r.records_moved;
      } else {
        ++it;
      }
    }
    // The departed node cannot send; a neighbor reports the departure.
    r.messages = 1;
    r.tables_updated = 1;
    return r;
  }
  notify_server(notice.subject);
  r.messages = notice.subject == table_.owner ? 0 : 1;
  r.tables_updated = 1;
  return r;
}

proto::TableStats CentralDirectory::table_stats() const {
  const auto size = static_cast<std::uint64_t>(table_.entries.size());
  return proto::TableStats{size, 1, static_cast<double>(size)};
}

DataId CentralDirectory::name_for(std::string_view local_name, NodeId) {
  return DataId(std::string(local_name));
}

proto::PlacementOutcome CentralDirectory::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.insert_or_assign(data, to);
  notify_server(to);
  table_.entries.insert_or_assign(data, to);
  return proto::PlacementOutcome{to, true, true, proto::NameStability::stable, data};
}

}  // namespace dloc::directory
