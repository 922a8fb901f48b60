#include "dloc/audit/verdict.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dloc/audit/table1.hpp"

namespace dloc::audit {

std::string TradeoffVerdict::failing() const {
  std::string out;
  auto add = [&](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out.push_back(',');
    out += name;
  };
  add(S, "S");
  add(To, "To");
  add(N, "N");
  return out;
}

namespace {

ScalingClass conclusive_fit(const Sweep& sweep, MetricFn metric, const char* name) {
  ScalingClass fit = fit_scaling(series_of(sweep, metric, name));
  if (!fit.all_zero && !fit.conclusive()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", fit.fit_quality);
    throw ClassificationError(sweep.protocol + ": inconclusive fit for " + name + " on the " +
                              std::string(to_string(sweep.axis)) + " axis (R2=" + buf + ")");
  }
  return fit;
}

bool linear_or_worse(const ScalingClass& c) {
  return !c.all_zero && c.growth && (*c.growth == Growth::linear || *c.growth == Growth::quadratic);
}

std::string describe(const std::string& what, const ScalingClass& c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, " (R2=%.3f)", c.fit_quality);
  return what + ": " + (c.all_zero ? std::string("zero") : c.label()) + buf;
}

}  // namespace

TradeoffVerdict classify(const std::string& protocol, const SweepSet& data) {
  TradeoffVerdict v;
  v.protocol = protocol;

  // Table growth: the best-case variant when one exists (DNS zone layouts).
  const std::string variant = data.find(protocol, Axis::d, "best") ? "best" : "";
  const Sweep* d_axis = data.find(protocol, Axis::d, variant);
  const Sweep* load = data.find(protocol, Axis::load, variant);
  if (!d_axis || !load) throw ClassificationError(protocol + ": missing d-axis or load-axis sweep");
  const ScalingClass td = conclusive_fit(*d_axis, metric_mean_table_size, "mean_table_size");
  const ScalingClass tl = conclusive_fit(*load, metric_mean_table_size, "mean_table_size");
  const bool table_linear_in_d = linear_or_worse(td) && linear_or_worse(tl);
  v.evidence.push_back(describe("table vs d", td) + ", " + describe("table at d/n fixed", tl));

  // Requests on a complete graph, where diameter factors vanish.
  const Sweep* flat = data.find(protocol, Axis::flat);
  if (!flat) {
    const Sweep* n_axis = data.find(protocol, Axis::n);
    if (n_axis && n_axis->topology == "complete") flat = n_axis;
  }
  if (!flat) throw ClassificationError(protocol + ": missing complete-graph sweep");
  const ScalingClass fr = conclusive_fit(*flat, metric_requests, "mean_lookup_requests");
  v.evidence.push_back(describe("requests on complete graph", fr));
  v.S = !table_linear_in_d && !linear_or_worse(fr);

  double hotspot = 0;
  bool manual = false;
  for (const Sweep& s : data.sweeps) {
    if (s.protocol != protocol) continue;
    for (const auto& r : s.records) {
      manual = manual || r.manual_intervention;
      if (s.axis == Axis::n) hotspot = std::max(hotspot, r.hotspot_share);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max lookup hotspot share %.3f", hotspot);
  v.evidence.emplace_back(buf);
  v.To = !manual;
  v.evidence.push_back(manual ? "a topology change required manual intervention"
                              : "every topology change was absorbed automatically");

  const NamingProbe* p = data.probe(protocol);
  if (!p) throw ClassificationError(protocol + ": missing naming probe");
  v.N = p->plain_name_accepted && p->plain_placement_honored && p->name_stable_on_move;
  std::ostringstream probe;
  probe << "probe over " << p->trials << " placements: name kept " << (p->plain_name_accepted ? "yes" : "no")
        << ", placement honored " << (p->plain_placement_honored ? "yes" : "no") << ", name stable on move "
        << (p->name_stable_on_move ? "yes" : "no");
  v.evidence.push_back(probe.str());
  return v;
}

ConjectureReport conjecture_check(const std::vector<TradeoffVerdict>& verdicts) {
  ConjectureReport report;
  report.verdicts = verdicts;
  for (const auto& v : verdicts) {
    if (v.S && v.To && v.N) {
      report.holds = false;
      report.counterexamples.push_back(v.protocol);
    }
    const ProtocolClaims* claims = find_claims(v.protocol);
    if (claims && claims->failing != v.failing()) report.red_cells_match = false;
  }
  return report;
}

std::string ConjectureReport::render() const {
  std::ostringstream out;
  out << "S-To-N check: no protocol may satisfy all three properties\n\n";
  for (const auto& v : verdicts) {
    const ProtocolClaims* claims = find_claims(v.protocol);
    const std::string expected = claims ? claims->failing : "?";
    out << v.protocol << ": S=" << (v.S ? 1 : 0) << " To=" << (v.To ? 1 : 0) << " N=" << (v.N ? 1 : 0)
        << "  fails {" << v.failing() << "} expected {" << expected << "}"
        << (v.failing() == expected ? "" : "  MISMATCH") << '\n';
    for (const auto& e : v.evidence) out << "    " << e << '\n';
  }
  out << '\n' << (holds ? "conjecture holds" : "COUNTEREXAMPLE FOUND");
  for (const auto& c : counterexamples) out << ' ' << c;
  out << '\n' << (red_cells_match ? "failing sets match the red cells" : "failing sets DIFFER from the red cells")
      << '\n';
  return out.str();
}

}  // namespace dloc::audit
