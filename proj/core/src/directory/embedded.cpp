#include "dloc/directory/embedded.hpp"

namespace dloc::directory {

std::optional<std::pair<Address, std::string>> parse_embedded_name(const DataId& name, unsigned width) {
  const std::string& s = name.str();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::nullopt;
  auto address = net::parse_address(std::string_view(s).substr(0, slash), width);
  if (!address) return std::nullopt;
  return std::make_pair(*address, s.substr(slash + 1));
}

std::string embedded_name(Address destination, std::string_view local_name) {
  return destination.to_string() + "/" + std::string(local_name);
}

EmbeddedRouting::EmbeddedRouting(net::Topology& topology, net::SimConfig sim, EmbeddedParams params)
    : SimulatedProtocol(topology, sim), params_(params) {
  sim_.set_handler([this](net::Simulator<Address>& s, net::Message<Address>& m) {
    const NodeId here = m.dst;
    if (topology_.address_of(here) == m.payload) {
      reached_ = here;
      return;
    }
    // Loop guard: a packet never needs more hops than there are nodes.
    if (++forwarded_ > topology_.node_capacity() || here.value >= tables_.size()) return;
    const auto next = tables_[here.value].lookup(m.payload);
    if (!next) return;
    const auto link = topology_.link_between(here, *next);
    if (!link) return;  // stale route towards a vanished neighbor
    s.send_over(here, *link, m.op, m.payload);
  });
  recompute_routes();
}

RouteTable EmbeddedRouting::build_table(NodeId node) const {
  RouteTable table(topology_.address_width());
  std::vector<Route> routes;
  std::vector<Address> live;
  for (NodeId other : topology_.nodes()) {
    if (other == node) continue;
    const Address a = topology_.address_of(other);
    routes.push_back(Route{Prefix(a, a.width()), topology_.next_hop(node, other)});
    live.push_back(a);
  }
  table.assign(std::move(routes));
  if (params_.aggregate) return aggregate(table, live);
  return table;
}

proto::ReconfigTrace EmbeddedRouting::recompute_routes() {
  proto::ReconfigTrace r;
  r.manual_intervention = true;
  tables_.assign(topology_.node_capacity(), RouteTable(topology_.address_width()));
  for (NodeId node : topology_.nodes()) {
    tables_[node.value] = build_table(node);
    ++r.tables_updated;
  }
  return r;
}

proto::PlacementOutcome EmbeddedRouting::store(const proto::PlacementRequest& request) {
  const unsigned width = topology_.address_width();
  proto::PlacementOutcome out;
  auto parsed = parse_embedded_name(request.data, width);
  std::optional<NodeId> named = parsed ? topology_.node_with_address(parsed->first) : std::nullopt;
  NodeId at;
  DataId stored = request.data;
  if (named && (!request.preferred_node || *request.preferred_node == *named)) {
    at = *named;
  } else {
    // The name has to carry the holder's address; rewrite it.
    at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
    if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
    stored = DataId(embedded_name(topology_.address_of(at), parsed ? parsed->second : request.data.str()));
    out.name_accepted = false;
  }
  holdings_.insert_or_assign(stored, at);
  out.stored_at = at;
  out.placement_honored = !request.preferred_node || *request.preferred_node == at;
  out.name_after_move = proto::NameStability::changes;
  out.stored_as = stored;
  return out;
}

proto::LookupTrace EmbeddedRouting::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  auto parsed = parse_embedded_name(data, topology_.address_width());
  if (!parsed) return trace;
  reached_.reset();
  forwarded_ = 0;
  if (topology_.address_of(origin) == parsed->first) {
    reached_ = origin;
  } else if (origin.value < tables_.size()) {
    if (auto next = tables_[origin.value].lookup(parsed->first)) {
      if (auto link = topology_.link_between(origin, *next)) {
        sim_.send_over(origin, *link, trace.op, parsed->first);
        sim_.run();
        trace.requests = 1;
      }
    }
  }
  fill_from_sim(trace);
  trace.hops = trace.links_used;
  if (reached_ && holds(*reached_, data)) {
    trace.success = true;
    trace.resolved_at = reached_;
  }
  return trace;
}

proto::ReconfigTrace EmbeddedRouting::on_topology_change(const net::ChangeNotice& notice) {
  // Routes and names both go stale; only an operator can fix either.
  proto::ReconfigTrace r;
  r.manual_intervention = true;
  if (notice.subject.value >= tables_.size()) tables_.resize(notice.subject.value + 1, RouteTable(topology_.address_width()));
  return r;
}

proto::TableStats EmbeddedRouting::table_stats() const {
  proto::TableStats s;
  double total = 0;
  for (NodeId n : topology_.nodes()) {
    const std::uint64_t size = n.value < tables_.size() ? tables_[n.value].size() : 0;
    s.max_size = std::max(s.max_size, size);
    total += static_cast<double>(size);
    ++s.table_count;
  }
  s.mean_size = s.table_count == 0 ? 0.0 : total / static_cast<double>(s.table_count);
  return s;
}

DataId EmbeddedRouting::name_for(std::string_view local_name, NodeId target) {
  return DataId(embedded_name(topology_.address_of(target), local_name));
}

proto::PlacementOutcome EmbeddedRouting::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  auto parsed = parse_embedded_name(data, topology_.address_width());
  const std::string local = parsed ? parsed->second : data.str();
  DataId renamed(embedded_name(topology_.address_of(to), local));
  holdings_.erase(data);
  holdings_.insert_or_assign(renamed, to);
  return proto::PlacementOutcome{to, true, true, proto::NameStability::changes, renamed};
}

}  // namespace dloc::directory
