#include "dloc/directory/dns.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace dloc::directory {

namespace {

std::vector<std::string> split_suffix(std::string_view path) {
  // "example.com" -> {"com", "example"}; "." -> {}
  std::vector<std::string> labels;
  if (path == "." || path.empty()) return labels;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t dot = std::min(path.find('.', pos), path.size());
    if (dot > pos) labels.emplace_back(path.substr(pos, dot - pos));
    pos = dot + 1;
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::string join_suffix(const std::vector<std::string>& suffix) {
  if (suffix.empty()) return ".";
  std::string out;
  for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
    if (!out.empty()) out.push_back('.');
    out += *it;
  }
  return out;
}

}  // namespace

std::string Zone::name() const { return join_suffix(suffix); }

std::vector<ZoneAssignment> parse_zone_file(std::istream& in) {
  std::vector<ZoneAssignment> zones;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string path;
    long long server = -1;
    if (!(fields >> path)) continue;
    if (!(fields >> server) || server < 0) {
      throw net::InvalidScenario("zone file line " + std::to_string(line_no) + ": expected `suffix-path server-node`");
    }
    std::string extra;
    if (fields >> extra) {
      throw net::InvalidScenario("zone file line " + std::to_string(line_no) + ": trailing field `" + extra + "`");
    }
    zones.push_back(ZoneAssignment{split_suffix(path), NodeId{static_cast<std::uint32_t>(server)}});
  }
  return zones;
}

std::string format_zone_file(const std::vector<ZoneAssignment>& zones) {
  std::ostringstream out;
  for (const auto& z : zones) out << join_suffix(z.suffix) << ' ' << z.server.value << '\n';
  return out.str();
}

std::optional<ZoneLayout> parse_zone_layout(std::string_view text) {
  if (text == "balanced") return ZoneLayout::balanced;
  if (text == "flat") return ZoneLayout::flat;
  if (text == "chain") return ZoneLayout::chain;
  return std::nullopt;
}

std::vector<ZoneAssignment> generate_zones(const net::Topology& topology, ZoneLayout layout,
                                           std::size_t arity) {
  const auto nodes = topology.nodes();
  if (nodes.empty()) throw net::InvalidScenario("zone tree needs a node");
  std::vector<ZoneAssignment> zones;
  zones.push_back(ZoneAssignment{{}, nodes.front()});
  if (layout == ZoneLayout::flat) return zones;
  if (arity == 0) throw net::InvalidScenario("zone arity must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const std::size_t parent = layout == ZoneLayout::chain ? i - 1 : (i - 1) / arity;
    ZoneAssignment z{zones[parent].suffix, nodes[i]};
    z.suffix.push_back("z" + std::to_string(i));
    zones.push_back(std::move(z));
  }
  return zones;
}

// ---------------------------------------------------------------- DnsDirectory

DnsDirectory::DnsDirectory(net::Topology& topology, net::SimConfig sim,
                           std::vector<ZoneAssignment> assignments)
    : SimulatedProtocol(topology, sim) {
  std::stable_sort(assignments.begin(), assignments.end(),
                   [](const ZoneAssignment& a, const ZoneAssignment& b) {
                     return a.suffix.size() < b.suffix.size();
                   });
  if (assignments.empty() || !assignments.front().suffix.empty()) {
    throw net::InvalidScenario("zone tree needs a root zone");
  }
  for (const auto& a : assignments) {
    if (!topology.contains(a.server)) {
      throw net::InvalidScenario("zone " + join_suffix(a.suffix) + " served by a dead node");
    }
    Zone zone;
    zone.suffix = a.suffix;
    zone.server = a.server;
    const std::size_t index = zones_.size();
    if (!a.suffix.empty()) {
      // Parent is the zone for the suffix minus its last label.
      std::size_t parent = root_;
      for (std::size_t depth = 0; depth + 1 < a.suffix.size(); ++depth) {
        auto it = zones_[parent].children.find(a.suffix[depth]);
        if (it == zones_[parent].children.end()) {
          throw net::InvalidScenario("zone " + join_suffix(a.suffix) + " has no parent zone");
        }
        parent = it->second;
      }
      if (!zones_[parent].children.emplace(a.suffix.back(), index).second) {
        throw net::InvalidScenario("duplicate zone " + join_suffix(a.suffix));
      }
      zone.parent = parent;
    } else if (!zones_.empty()) {
      throw net::InvalidScenario("duplicate root zone");
    }
    zones_.push_back(std::move(zone));
    delegated_.push_back(topology.address_of(a.server));
  }
}

std::vector<std::string> DnsDirectory::reversed_labels(const std::string& name) {
  return split_suffix(name);
}

std::size_t DnsDirectory::zone_for(const DataId& name) const {
  const auto labels = reversed_labels(name.str());
  std::size_t zone = root_;
  for (const auto& label : labels) {
    auto it = zones_[zone].children.find(label);
    if (it == zones_[zone].children.end()) break;
    zone = it->second;
  }
  return zone;
}

proto::PlacementOutcome DnsDirectory::store(const proto::PlacementRequest& request) {
  const NodeId at = request.preferred_node.value_or(proto::default_placement(topology_, request.data));
  if (!topology_.contains(at)) throw net::InvalidScenario("preferred node is not live");
  holdings_.insert_or_assign(request.data, at);
  Zone& zone = zones_[zone_for(request.data)];
  zone.records.insert_or_assign(request.data, topology_.address_of(at));
  if (topology_.contains(zone.server) && zone.server != at) {
    sim_.send(at, zone.server, sim_.begin_op(), 0);
    sim_.run();
  }
  return proto::PlacementOutcome{at, true, true, proto::NameStability::stable, std::nullopt};
}

proto::LookupTrace DnsDirectory::locate(const DataId& data, NodeId origin) {
  if (holds(origin, data)) return local_hit(origin);
  proto::LookupTrace trace;
  trace.op = sim_.begin_op();
  const auto labels = reversed_labels(data.str());
  std::size_t zone = root_;
  std::size_t next_label = 0;
  net::Address server_address = delegated_[root_];
  for (;;) {
    // The client only knows an address; whoever holds it now gets the query.
    const auto contacted = topology_.node_with_address(server_address);
    if (!contacted) break;
    if (*contacted != origin) {
      sim_.send(origin, *contacted, trace.op, 0);
      sim_.run();
      ++trace.requests;
    }
    ++trace.hops;
    if (*contacted != zones_[zone].server) break;  // stale referral: wrong server answers
    const Zone& z = zones_[zone];
    if (next_label < labels.size()) {
      auto child = z.children.find(labels[next_label]);
      if (child != z.children.end()) {
        zone = child->second;
        server_address = delegated_[zone];
        ++next_label;
        continue;
      }
    }
    auto record = z.records.find(data);
    if (record != z.records.end()) {
      if (auto holder = topology_.node_with_address(record->second); holder && holds(*holder, data)) {
        trace.success = true;
        trace.resolved_at = *holder;
      }
    }
    break;
  }
  fill_from_sim(trace);
  return trace;
}

proto::ReconfigTrace DnsDirectory::on_topology_change(const net::ChangeNotice& notice) {
  proto::ReconfigTrace r;
  const bool serves = std::any_of(zones_.begin(), zones_.end(),
                                  [&](const Zone& z) { return z.server == notice.subject; });
  const bool holds_data = std::any_of(holdings_.begin(), holdings_.end(),
                                      [&](const auto& h) { return h.second == notice.subject; });
  if (std::holds_alternative<net::JoinChange>(notice.change)) {
    // A new server only becomes reachable once someone delegates to it.
    r.manual_intervention = true;
  } else if (std::holds_alternative<net::ReaddressChange>(notice.change)) {
    r.manual_intervention = true;
  } else {
    r.manual_intervention = serves || holds_data;
  }
  return r;
}

proto::ReconfigTrace DnsDirectory::manual_update() {
  proto::ReconfigTrace r;
  r.manual_intervention = true;
  for (std::size_t i = 0; i < zones_.size(); ++i) {
    if (!topology_.contains(zones_[i].server)) continue;
    const net::Address current = topology_.address_of(zones_[i].server);
    if (delegated_[i] != current) {
      delegated_[i] = current;
      ++r.tables_updated;
      ++r.messages;
    }
    for (auto& [name, address] : zones_[i].records) {
      auto holder = holder_of(name);
      if (holder && topology_.address_of(*holder) != address) {
        address = topology_.address_of(*holder);
        ++r.records_moved;
        ++r.messages;
      }
    }
  }
  return r;
}

proto::TableStats DnsDirectory::table_stats() const {
  std::map<NodeId, std::uint64_t> per_server;
  for (const Zone& z : zones_) {
    if (!topology_.contains(z.server)) continue;
    per_server[z.server] += z.records.size() + z.children.size();
  }
  proto::TableStats s;
  double total = 0;
  for (const auto& [server, size] : per_server) {
    s.max_size = std::max(s.max_size, size);
    total += static_cast<double>(size);
  }
  s.table_count = per_server.size();
  s.mean_size = per_server.empty() ? 0.0 : total / static_cast<double>(per_server.size());
  return s;
}

DataId DnsDirectory::name_for(std::string_view local_name, NodeId target) {
  // Deepest zone served by the target; names outside every zone live in the root.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < zones_.size(); ++i) {
    if (zones_[i].server == target && (!best || zones_[i].depth() > zones_[*best].depth())) best = i;
  }
  std::string name(local_name);
  if (best && !zones_[*best].suffix.empty()) name += "." + zones_[*best].name();
  return DataId(std::move(name));
}

proto::PlacementOutcome DnsDirectory::relocate(const DataId& data, NodeId to) {
  if (!topology_.contains(to)) throw net::InvalidScenario("relocation target is not live");
  holdings_.insert_or_assign(data, to);
  zones_[zone_for(data)].records.insert_or_assign(data, topology_.address_of(to));
  return proto::PlacementOutcome{to, true, true, proto::NameStability::stable, data};
}

std::vector<ZoneAssignment> DnsDirectory::assignments() const {
  std::vector<ZoneAssignment> out;
  // Preorder by label so dumps are stable.
  std::vector<std::size_t> stack{root_};
  while (!stack.empty()) {
    const std::size_t z = stack.back();
    stack.pop_back();
    out.push_back(ZoneAssignment{zones_[z].suffix, zones_[z].server});
    for (auto it = zones_[z].children.rbegin(); it != zones_[z].children.rend(); ++it) {
      stack.push_back(it->second);
    }
  }
  return out;
}

}  // namespace dloc::directory
