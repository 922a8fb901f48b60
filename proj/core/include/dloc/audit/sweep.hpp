#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dloc/audit/scaling.hpp"
#include "dloc/proto/measure.hpp"

namespace dloc::audit {

/// Which quantity a sweep varies.
enum class Axis {
  n,     // node count, d fixed
  d,     // object count, n fixed
  load,  // node count with d proportional to n
  flat,  // node count on a complete graph (no diameter factor)
};

std::string_view to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view text);

/// Records of one scenario, one per sweep point.
struct Sweep {
  std::string protocol;
  Axis axis = Axis::n;
  std::string variant;   // e.g. "best" / "worst" zone layouts
  std::string topology;  // topology label
  std::vector<proto::MetricsRecord> records;
};

/// Placement probe run on a small fresh network.
struct NamingProbe {
  std::string protocol;
  proto::NamingForm form = proto::NamingForm::free;
  /// store(plain name, preferred x) kept the name verbatim, for every trial.
  bool plain_name_accepted = false;
  /// ... and put the data on x, for every trial.
  bool plain_placement_honored = false;
  /// relocate kept the name, for every trial.
  bool name_stable_on_move = false;
  /// store(name_for(obj, x)) put the data on x, for every trial.
  bool convention_places_on_target = false;
  /// locate succeeded under the post-move name.
  bool locatable_after_move = false;
  std::size_t trials = 0;
};

struct SweepSet {
  std::vector<Sweep> sweeps;
  std::vector<NamingProbe> probes;

  const Sweep* find(std::string_view protocol, Axis axis, std::string_view variant = "") const;
  const NamingProbe* probe(std::string_view protocol) const;
  /// Protocol labels in first-appearance order.
  std::vector<std::string> protocols() const;
};

/// Metric accessor used to turn a sweep into a scaling series.
using MetricFn = double (*)(const proto::MetricsRecord&);

double metric_mean_table_size(const proto::MetricsRecord& r);
double metric_table_count(const proto::MetricsRecord& r);
double metric_requests(const proto::MetricsRecord& r);
double metric_links(const proto::MetricsRecord& r);
double metric_reconfig_per_change(const proto::MetricsRecord& r);
double metric_moves_per_change(const proto::MetricsRecord& r);

/// x is d on the d axis and n elsewhere; points sorted by x.
ScalingSeries series_of(const Sweep& sweep, MetricFn metric, std::string_view metric_name);

}  // namespace dloc::audit
