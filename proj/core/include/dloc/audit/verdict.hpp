#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dloc/audit/sweep.hpp"

namespace dloc::audit {

/// Raised when a verdict would rest on an inconclusive fit or missing data.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TradeoffVerdict {
  std::string protocol;
  bool S = false;
  bool To = false;
  bool N = false;
  std::vector<std::string> evidence;

  /// Failing properties joined with ',' ("" when none fail).
  std::string failing() const;
};

/// S: the location table is not O(d), and lookup requests on a complete graph
///    do not grow linearly or worse in n.
/// To: no change ever required manual intervention.
/// N: a plainly named object placed on a chosen node stays there under its
///    name, and keeps the name when moved.
TradeoffVerdict classify(const std::string& protocol, const SweepSet& data);

struct ConjectureReport {
  std::vector<TradeoffVerdict> verdicts;
  /// No verdict has S, To and N together.
  bool holds = true;
  /// Every failing set equals the expected red cells of its row.
  bool red_cells_match = true;
  std::vector<std::string> counterexamples;

  bool ok() const { return holds && red_cells_match; }
  std::string render() const;
};

ConjectureReport conjecture_check(const std::vector<TradeoffVerdict>& verdicts);

}  // namespace dloc::audit
