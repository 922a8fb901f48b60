#include "dloc/audit/sweep.hpp"

#include <algorithm>

namespace dloc::audit {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::n: return "n";
    case Axis::d: return "d";
    case Axis::load: return "load";
    case Axis::flat: return "flat";
  }
  return "?";
}

std::optional<Axis> parse_axis(std::string_view text) {
  if (text == "n") return Axis::n;
  if (text == "d") return Axis::d;
  if (text == "load") return Axis::load;
  if (text == "flat") return Axis::flat;
  return std::nullopt;
}

const Sweep* SweepSet::find(std::string_view protocol, Axis axis, std::string_view variant) const {
  for (const Sweep& s : sweeps) {
    if (s.protocol == protocol && s.axis == axis && s.variant == variant && !s.records.empty()) return &s;
  }
  return nullptr;
}

const NamingProbe* SweepSet::probe(std::string_view protocol) const {
  for (const NamingProbe& p : probes) {
    if (p.protocol == protocol) return &p;
  }
  return nullptr;
}

std::vector<std::string> SweepSet::protocols() const {
  std::vector<std::string> out;
  for (const Sweep& s : sweeps) {
    if (std::find(out.begin(), out.end(), s.protocol) == out.end()) out.push_back(s.protocol);
  }
  return out;
}

double metric_mean_table_size(const proto::MetricsRecord& r) { return r.mean_table_size; }
double metric_table_count(const proto::MetricsRecord& r) { return static_cast<double>(r.table_count); }
double metric_requests(const proto::MetricsRecord& r) { return r.mean_lookup_requests; }
double metric_links(const proto::MetricsRecord& r) { return r.mean_links_used; }
double metric_reconfig_per_change(const proto::MetricsRecord& r) { return r.reconfig_messages_per_change(); }
double metric_moves_per_change(const proto::MetricsRecord& r) { return r.records_moved_per_change(); }

ScalingSeries series_of(const Sweep& sweep, MetricFn metric, std::string_view metric_name) {
  ScalingSeries s;
  s.protocol = sweep.protocol;
  s.metric = std::string(metric_name) + "@" + std::string(to_string(sweep.axis));
  for (const auto& r : sweep.records) {
    const double x = static_cast<double>(sweep.axis == Axis::d ? r.d : r.n);
    s.points.push_back(ScalingPoint{x, metric(r)});
  }
  std::sort(s.points.begin(), s.points.end(), [](const ScalingPoint& a, const ScalingPoint& b) { return a.x < b.x; });
  return s;
}

}  // namespace dloc::audit
