#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dloc/audit/sweep.hpp"
#include "dloc/net/topology.hpp"

namespace dloc::suite {

/// Syntax or validation error in a suite file; `line` is 1-based.
class SuiteParseError : public std::runtime_error {
 public:
  SuiteParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Knobs forwarded to the protocol factories.
struct ProtocolOptions {
  std::optional<std::uint32_t> ttl;
  std::uint32_t walkers = 1;
  bool walkers_per_degree = false;
  unsigned keyspace_bits = 16;
  std::string zones = "balanced";  // balanced | flat | chain
  std::size_t zone_arity = 2;
  bool rules = false;      // consistent hashing: pin placements with rules
  bool aggregate = false;  // ip routing: aggregate tables
};

/// One scripted change. Joins take the listed peers; `leave joined` removes
/// the most recent joiner that is still present.
struct ScriptStep {
  enum class Kind { join, leave, leave_joined, readdress } kind = Kind::join;
  std::vector<std::uint32_t> nodes;
  std::string address;
};

struct Scenario {
  std::string name;
  std::size_t line = 0;
  std::string protocol;
  net::TopologySpec topology;
  std::vector<std::size_t> n{16};
  std::vector<std::size_t> d{100};
  std::optional<std::size_t> d_per_node;  // "d = 25n"
  std::optional<std::size_t> lookups;     // default 10 d
  std::size_t changes = 8;
  std::size_t join_links = 2;
  std::vector<ScriptStep> script;
  audit::Axis axis = audit::Axis::n;
  std::string variant;
  std::optional<std::uint64_t> seed;
  unsigned address_width = 32;
  ProtocolOptions options;

  /// (n, d) sweep points in file order.
  std::vector<std::pair<std::size_t, std::size_t>> points() const;
  std::size_t lookups_for(std::size_t d) const { return lookups.value_or(10 * d); }
};

struct Suite {
  std::uint64_t seed = 1;
  std::vector<Scenario> scenarios;
};

/// Line format: `# comment`, `key = value`, and `[scenario NAME]` headers.
/// Keys before the first header apply to the suite (only `seed`).
Suite parse_suite(std::istream& in);
Suite parse_suite_file(const std::filesystem::path& path);

/// Resolves a script against the initial node count: the k-th join creates node n + k.
std::vector<net::TopologyChange> resolve_script(const std::vector<ScriptStep>& script, std::size_t n,
                                                unsigned address_width);

}  // namespace dloc::suite
