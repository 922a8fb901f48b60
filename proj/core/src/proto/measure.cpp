#include "dloc/proto/measure.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "dloc/net/rng.hpp"

namespace dloc::proto {

double MetricsRecord::reconfig_messages_per_change() const {
  return changes == 0 ? 0.0 : static_cast<double>(reconfig_messages) / static_cast<double>(changes);
}

double MetricsRecord::records_moved_per_change() const {
  return changes == 0 ? 0.0 : static_cast<double>(records_moved) / static_cast<double>(changes);
}

std::string to_csv_row(const MetricsRecord& r) {
  std::ostringstream out;
  out << r.protocol << ',' << r.n << ',' << r.d << ',' << r.max_table_size << ',' << r.table_count
      << ',' << std::fixed << std::setprecision(6) << r.mean_lookup_requests << ','
      << r.mean_links_used << ',' << r.reconfig_messages << ','
      << (r.manual_intervention ? "true" : "false");
  return out.str();
}

namespace {

struct TableTracker {
  std::uint64_t max_size = 0;

  void observe(const TableStats& s) { max_size = std::max(max_size, s.max_size); }
};

}  // namespace

MetricsRecord measure(std::string_view protocol_label, const ProtocolFactory& factory,
                      const net::TopologySpec& spec, std::size_t n, const Workload& workload,
                      std::uint64_t seed, net::SimConfig sim, unsigned address_width) {
  net::Topology topology =
      net::build_topology(spec, n, net::derive_seed(seed, "topology"), address_width);
  std::unique_ptr<Protocol> protocol =
      factory(ProtocolContext{topology, sim, net::derive_seed(seed, "protocol")});

  MetricsRecord record;
  record.protocol = std::string(protocol_label);
  record.n = n;
  record.d = workload.objects;

  // Placement: uniformly random target per object, named the way the
  // protocol needs names to be (hash protocols keep the free name).
  net::Rng placement(net::derive_seed(seed, "placement"));
  const std::vector<NodeId> initial = topology.nodes();
  std::vector<DataId> names;
  names.reserve(workload.objects);
  for (std::size_t i = 0; i < workload.objects; ++i) {
    const NodeId target = initial[placement.uniform(initial.size())];
    const std::string local = "obj-" + std::to_string(i);
    DataId name = protocol->naming_form() == NamingForm::hash_inverse
                      ? DataId(local)
                      : protocol->name_for(local, target);
    PlacementOutcome out = protocol->store(PlacementRequest{name, target});
    names.push_back(out.stored_as.value_or(name));
  }
  protocol->settle();

  TableTracker tables;
  const TableStats steady = protocol->table_stats();
  tables.observe(steady);
  record.table_count = steady.table_count;
  record.mean_table_size = steady.mean_size;

  // Lookups.
  if (!names.empty() && workload.lookups > 0) {
    const auto received_before = std::vector<std::uint64_t>(protocol->sim().received_per_node().begin(),
                                                             protocol->sim().received_per_node().end());
    net::Rng lookups(net::derive_seed(seed, "lookups"));
    double requests = 0, links = 0, hops = 0, successes = 0;
    for (std::size_t i = 0; i < workload.lookups; ++i) {
      const DataId& data = names[lookups.uniform(names.size())];
      const NodeId origin = initial[lookups.uniform(initial.size())];
      const LookupTrace t = protocol->locate(data, origin);
      requests += static_cast<double>(t.requests);
      links += static_cast<double>(t.links_used);
      hops += static_cast<double>(t.hops);
      successes += t.success ? 1.0 : 0.0;
    }
    const double q = static_cast<double>(workload.lookups);
    record.lookups = workload.lookups;
    record.mean_lookup_requests = requests / q;
    record.mean_links_used = links / q;
    record.mean_hops = hops / q;
    record.lookup_success_rate = successes / q;

    const auto received_after = protocol->sim().received_per_node();
    std::uint64_t total = 0, peak = 0;
    for (std::size_t i = 0; i < received_after.size(); ++i) {
      const std::uint64_t before = i < received_before.size() ? received_before[i] : 0;
      const std::uint64_t delta = received_after[i] - before;
      total += delta;
      peak = std::max(peak, delta);
    }
    record.hotspot_share = total == 0 ? 0.0 : static_cast<double>(peak) / static_cast<double>(total);
  }

  // Topology changes.
  ReconfigTrace reconfig;
  auto apply = [&](const net::TopologyChange& change) {
    const net::ChangeNotice notice = net::apply_change(topology, change);
    reconfig += protocol->on_topology_change(notice);
    protocol->settle();
    tables.observe(protocol->table_stats());
    ++record.changes;
    return notice;
  };
  if (!workload.script.empty()) {
    for (const auto& change : workload.script) apply(change);
  } else {
    net::Rng churn(net::derive_seed(seed, "changes"));
    std::vector<NodeId> joined;
    for (std::size_t i = 0; i < workload.changes; ++i) {
      if (i % 2 == 0 || joined.empty()) {
        std::vector<NodeId> live = topology.nodes();
        net::JoinChange join;
        const std::size_t k = std::min(workload.join_links, live.size());
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t pick = j + churn.uniform(live.size() - j);
          std::swap(live[j], live[pick]);
          join.links.push_back(live[j]);
        }
        joined.push_back(apply(join).subject);
      } else {
        apply(net::LeaveChange{joined.back()});
        joined.pop_back();
      }
    }
  }
  record.reconfig_messages = reconfig.messages;
  record.records_moved = reconfig.records_moved;
  record.manual_intervention = reconfig.manual_intervention;
  record.max_table_size = tables.max_size;
  record.events = protocol->sim().events_executed();
  record.trace_digest = protocol->sim().trace().digest();
  return record;
}

}  // namespace dloc::proto
