#include "dloc/suite/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "dloc/net/rng.hpp"
#include "dloc/suite/registry.hpp"
#include "dloc/suite/svg_plot.hpp"

namespace dloc::suite {

std::uint64_t scenario_seed(const Scenario& scenario, std::uint64_t suite_seed) {
  return scenario.seed.value_or(net::derive_seed(suite_seed, scenario.name));
}

ScenarioResult run_scenario(const Scenario& scenario, std::uint64_t suite_seed, const net::SimConfig& sim) {
  ScenarioResult result;
  result.scenario = scenario;
  result.seed = scenario_seed(scenario, suite_seed);
  std::size_t n = 0, d = 0;
  try {
    const auto factory = make_factory(scenario.protocol, scenario.options);
    for (const auto& point : scenario.points()) {
      std::tie(n, d) = point;
      proto::Workload workload;
      workload.objects = d;
      workload.lookups = scenario.lookups_for(d);
      workload.changes = scenario.changes;
      workload.join_links = scenario.join_links;
      workload.script = resolve_script(scenario.script, n, scenario.address_width);
      const std::uint64_t seed = net::derive_seed(result.seed, n, d);
      result.records.push_back(
          proto::measure(scenario.protocol, factory, scenario.topology, n, workload, seed, sim, scenario.address_width));
    }
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "scenario " << scenario.name << " (line " << scenario.line << ") at n=" << n << ", d=" << d << ": "
        << e.what();
    result.error = msg.str();
  }
  return result;
}

audit::NamingProbe run_naming_probe(const std::string& protocol, const ProtocolOptions& options, std::uint64_t seed) {
  constexpr std::size_t kNodes = 16;
  constexpr std::size_t kTrials = 8;
  net::Topology topology = net::build_topology(net::TopologySpec{}, kNodes, net::derive_seed(seed, "probe"));
  auto instance = make_factory(protocol, options)(proto::ProtocolContext{topology, {}, net::derive_seed(seed, "probe")});
  audit::NamingProbe probe;
  probe.protocol = protocol;
  probe.form = instance->naming_form();
  probe.trials = kTrials;
  probe.plain_name_accepted = probe.plain_placement_honored = probe.name_stable_on_move = true;
  probe.convention_places_on_target = probe.locatable_after_move = true;
  const auto nodes = topology.nodes();
  for (std::size_t i = 0; i < kTrials; ++i) {
    const net::NodeId x = nodes[(5 * i + 3) % kNodes];
    const net::NodeId y = nodes[(5 * i + 10) % kNodes];
    const proto::DataId plain("probe-" + std::to_string(i));
    const auto stored = instance->store(proto::PlacementRequest{plain, x});
    instance->settle();
    const proto::DataId name = stored.stored_as.value_or(plain);
    probe.plain_name_accepted &= stored.name_accepted && name == plain;
    probe.plain_placement_honored &= stored.placement_honored && stored.stored_at == x;
    const auto moved = instance->relocate(name, y);
    instance->settle();
    const proto::DataId after = moved.stored_as.value_or(name);
    probe.name_stable_on_move &= moved.name_after_move == proto::NameStability::stable && after == name;
    probe.locatable_after_move &= instance->locate(after, nodes.front()).success;

    const proto::DataId conventional = instance->name_for("conv-" + std::to_string(i), x);
    const auto placed = instance->store(proto::PlacementRequest{conventional, x});
    probe.convention_places_on_target &= placed.stored_at == x;
  }
  return probe;
}

SuiteResult run_suite(const Suite& suite, const RunOptions& options) {
  SuiteResult result;
  const std::uint64_t suite_seed = options.seed.value_or(suite.seed);
  std::vector<const Scenario*> selected;
  for (const Scenario& s : suite.scenarios) {
    if (!options.filter || s.protocol == *options.filter) selected.push_back(&s);
  }
  result.scenarios.resize(selected.size());

  // Independent instances; each worker writes only its own slot.
  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, selected.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      result.scenarios[i] = run_scenario(*selected[i], suite_seed, options.sim);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::string> protocols;
  for (const auto& r : result.scenarios) {
    if (r.error) result.errors.push_back(*r.error);
    audit::Sweep sweep;
    sweep.protocol = r.scenario.protocol;
    sweep.axis = r.scenario.axis;
    sweep.variant = r.scenario.variant;
    sweep.topology = std::string(net::to_string(r.scenario.topology.kind));
    sweep.records = r.records;
    result.data.sweeps.push_back(std::move(sweep));
    if (std::find(protocols.begin(), protocols.end(), r.scenario.protocol) == protocols.end()) {
      protocols.push_back(r.scenario.protocol);
      try {
        result.data.probes.push_back(
            run_naming_probe(r.scenario.protocol, r.scenario.options, net::derive_seed(suite_seed, "naming-probe")));
      } catch (const std::exception& e) {
        result.errors.push_back("naming probe for " + r.scenario.protocol + ": " + e.what());
      }
    }
  }

  try {
    result.table = audit::reproduce_table(result.data);
  } catch (const std::exception& e) {
    result.errors.push_back(std::string("table reproduction: ") + e.what());
  }
  for (const auto& p : protocols) {
    try {
      result.verdicts.push_back(audit::classify(p, result.data));
    } catch (const std::exception& e) {
      result.errors.push_back(std::string("not classified: ") + e.what());
    }
  }
  result.conjecture = audit::conjecture_check(result.verdicts);
  return result;
}

std::string SuiteResult::metrics_csv() const {
  std::string out = std::string(proto::kMetricsCsvHeader) + "\n";
  for (const auto& s : scenarios) {
    for (const auto& r : s.records) out += proto::to_csv_row(r) + "\n";
  }
  return out;
}

std::string SuiteResult::points_csv() const {
  std::ostringstream out;
  out << "scenario,axis,variant,topology,protocol,n,d,mean_table_size,max_table_size,table_count,"
         "mean_lookup_requests,mean_links_used,mean_hops,lookup_success_rate,hotspot_share,changes,"
         "reconfig_messages,records_moved,manual_intervention,events,trace_digest\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& s : scenarios) {
    for (const auto& r : s.records) {
      out << s.scenario.name << ',' << audit::to_string(s.scenario.axis) << ',' << s.scenario.variant << ','
          << net::to_string(s.scenario.topology.kind) << ',' << r.protocol << ',' << r.n << ',' << r.d << ','
          << r.mean_table_size << ',' << r.max_table_size << ',' << r.table_count << ',' << r.mean_lookup_requests
          << ',' << r.mean_links_used << ',' << r.mean_hops << ',' << r.lookup_success_rate << ','
          << r.hotspot_share << ',' << r.changes << ',' << r.reconfig_messages << ',' << r.records_moved << ','
          << (r.manual_intervention ? "true" : "false") << ',' << r.events << ',' << std::hex << std::setw(16)
          << std::setfill('0') << r.trace_digest << std::dec << std::setfill(' ') << '\n';
    }
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_plots(const SuiteResult& result, const std::filesystem::path& dir) {
  struct Metric {
    const char* key;
    const char* title;
    audit::MetricFn fn;
  };
  const Metric metrics[] = {
      {"table_size", "mean table size", audit::metric_mean_table_size},
      {"table_count", "tables", audit::metric_table_count},
      {"requests", "lookup requests", audit::metric_requests},
      {"links", "links per lookup", audit::metric_links},
      {"reconfig", "reconfiguration messages per change", audit::metric_reconfig_per_change},
  };
  for (audit::Axis axis : {audit::Axis::n, audit::Axis::d, audit::Axis::load, audit::Axis::flat}) {
    for (const Metric& m : metrics) {
      std::vector<PlotSeries> series;
      bool any = false;
      for (const auto& sweep : result.data.sweeps) {
        if (sweep.axis != axis || sweep.records.empty()) continue;
        PlotSeries s;
        s.label = sweep.protocol + (sweep.variant.empty() ? "" : " (" + sweep.variant + ")");
        for (const auto& r : sweep.records) {
          const double x = static_cast<double>(axis == audit::Axis::d ? r.d : r.n);
          const double y = m.fn(r);
          any = any || y > 0;
          s.points.emplace_back(x, y);
        }
        series.push_back(std::move(s));
      }
      if (!any) continue;
      const std::string axis_name(audit::to_string(axis));
      write_file(dir / (std::string(m.key) + "_" + axis_name + ".svg"),
                 render_loglog_svg(std::string(m.title) + " (" + axis_name + " axis)",
                                   axis == audit::Axis::d ? "d (objects)" : "n (nodes)", m.title, series));
    }
  }
}

}  // namespace

void write_outputs(const SuiteResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "plots");
  write_file(dir / "metrics.csv", result.metrics_csv());
  write_file(dir / "points.csv", result.points_csv());
  write_file(dir / "table1.txt", result.table.render_text());
  write_file(dir / "table1.csv", result.table.render_csv());
  write_file(dir / "conjecture.txt", result.conjecture.render());
  std::string errors;
  for (const auto& e : result.errors) errors += e + "\n";
  write_file(dir / "errors.txt", errors);
  write_plots(result, dir / "plots");
}

}  // namespace dloc::suite
