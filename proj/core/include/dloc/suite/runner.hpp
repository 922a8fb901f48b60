#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dloc/audit/sweep.hpp"
#include "dloc/audit/table1.hpp"
#include "dloc/audit/verdict.hpp"
#include "dloc/suite/scenario.hpp"

namespace dloc::suite {

struct RunOptions {
  std::optional<std::uint64_t> seed;   // overrides the suite seed
  std::optional<std::string> filter;   // only this protocol
  std::size_t threads = 0;             // 0: hardware concurrency
  net::SimConfig sim;
};

struct ScenarioResult {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<proto::MetricsRecord> records;
  std::optional<std::string> error;  // the scenario stopped at the failing point
};

struct SuiteResult {
  std::vector<ScenarioResult> scenarios;
  audit::SweepSet data;
  audit::Table1Report table;
  std::vector<audit::TradeoffVerdict> verdicts;
  audit::ConjectureReport conjecture;
  std::vector<std::string> errors;  // scenario failures and unclassifiable protocols

  /// Conjecture holds with the expected failing sets and every Table 1 cell matched.
  /// A cell left unmeasured by a failed scenario counts as unmatched.
  bool ok() const { return conjecture.ok() && table.mismatches() == 0 && table.missing() == 0; }

  std::string metrics_csv() const;
  /// Every point with the audit-only fields and the trace digest.
  std::string points_csv() const;
};

/// Seed of a scenario: its own `seed` key, else derived from the suite seed and its name.
std::uint64_t scenario_seed(const Scenario& scenario, std::uint64_t suite_seed);

ScenarioResult run_scenario(const Scenario& scenario, std::uint64_t suite_seed, const net::SimConfig& sim = {});

/// Plain-name placement and move probe on a fresh 16-node chain.
audit::NamingProbe run_naming_probe(const std::string& protocol, const ProtocolOptions& options, std::uint64_t seed);

/// Runs every scenario (in parallel), then probes, audits and checks the conjecture.
SuiteResult run_suite(const Suite& suite, const RunOptions& options = {});

/// metrics.csv, points.csv, table1.txt, table1.csv, conjecture.txt, errors.txt, plots/*.svg
void write_outputs(const SuiteResult& result, const std::filesystem::path& dir);

}  // namespace dloc::suite
