#include "dloc/suite/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dloc/suite/registry.hpp"

namespace dloc::suite {

SuiteParseError::SuiteParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto next = s.find_first_of(seps, pos);
    const auto piece = trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class T>
T number(std::size_t line, const std::string& key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SuiteParseError(line, "`" + key + "` expects a number, got `" + std::string(text) + "`");
  }
  return value;
}

double real(std::size_t line, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw SuiteParseError(line, "`" + key + "` expects a real number, got `" + text + "`");
}

bool boolean(std::size_t line, const std::string& key, const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw SuiteParseError(line, "`" + key + "` expects true or false, got `" + text + "`");
}

/// "16, 32, 64" or "16..512" (doubling).
std::vector<std::size_t> count_list(std::size_t line, const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ", \t")) {
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const auto lo = number<std::size_t>(line, key, std::string_view(item).substr(0, dots));
      const auto hi = number<std::size_t>(line, key, std::string_view(item).substr(dots + 2));
      if (lo == 0 || hi < lo) throw SuiteParseError(line, "`" + key + "` range must be increasing and positive");
      for (std::size_t v = lo; v <= hi; v *= 2) out.push_back(v);
    } else {
      out.push_back(number<std::size_t>(line, key, item));
    }
  }
  if (out.empty()) throw SuiteParseError(line, "`" + key + "` needs at least one value");
  if (std::find(out.begin(), out.end(), std::size_t{0}) != out.end()) {
    throw SuiteParseError(line, "`" + key + "` values must be positive");
  }
  return out;
}

std::vector<ScriptStep> parse_script(std::size_t line, const std::string& text) {
  std::vector<ScriptStep> steps;
  for (const auto& item : split(text, ";")) {
    auto words = split(item, " \t,");
    ScriptStep step;
    if (words.empty()) continue;
    if (words[0] == "join") {
      step.kind = ScriptStep::Kind::join;
      if (words.size() < 2) throw SuiteParseError(line, "`join` needs at least one peer");
      for (std::size_t i = 1; i < words.size(); ++i) step.nodes.push_back(number<std::uint32_t>(line, "script", words[i]));
    } else if (words[0] == "leave") {
      if (words.size() != 2) throw SuiteParseError(line, "`leave` takes one node or `joined`");
      if (words[1] == "joined") {
        step.kind = ScriptStep::Kind::leave_joined;
      } else {
        step.kind = ScriptStep::Kind::leave;
        step.nodes.push_back(number<std::uint32_t>(line, "script", words[1]));
      }
    } else if (words[0] == "readdress") {
      if (words.size() != 3) throw SuiteParseError(line, "`readdress` takes a node and an address");
      step.kind = ScriptStep::Kind::readdress;
      step.nodes.push_back(number<std::uint32_t>(line, "script", words[1]));
      step.address = words[2];
    } else {
      throw SuiteParseError(line, "unknown script step `" + words[0] + "`");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

void apply_key(Scenario& s, std::size_t line, const std::string& key, const std::string& value) {
  if (key == "protocol") {
    if (!is_known_protocol(value)) throw SuiteParseError(line, "unknown protocol `" + value + "`");
    s.protocol = value;
  } else if (key == "topology") {
    auto kind = net::parse_topology_kind(value);
    if (!kind) throw SuiteParseError(line, "unknown topology `" + value + "`");
    s.topology.kind = *kind;
  } else if (key == "arity") {
    s.topology.arity = number<std::size_t>(line, key, value);
    if (s.topology.arity == 0) throw SuiteParseError(line, "`arity` must be positive");
  } else if (key == "p") {
    s.topology.edge_probability = real(line, key, value);
    if (!(s.topology.edge_probability > 0 && s.topology.edge_probability <= 1)) {
      throw SuiteParseError(line, "`p` must be in (0, 1]");
    }
  } else if (key == "n") {
    s.n = count_list(line, key, value);
  } else if (key == "d") {
    if (value.size() > 1 && value.back() == 'n') {
      s.d_per_node = number<std::size_t>(line, key, std::string_view(value).substr(0, value.size() - 1));
    } else {
      s.d = count_list(line, key, value);
      s.d_per_node.reset();
    }
  } else if (key == "lookups") {
    s.lookups = number<std::size_t>(line, key, value);
  } else if (key == "changes") {
    s.changes = number<std::size_t>(line, key, value);
  } else if (key == "join_links") {
    s.join_links = number<std::size_t>(line, key, value);
    if (s.join_links == 0) throw SuiteParseError(line, "`join_links` must be positive");
  } else if (key == "script") {
    s.script = parse_script(line, value);
  } else if (key == "axis") {
    auto axis = audit::parse_axis(value);
    if (!axis) throw SuiteParseError(line, "unknown axis `" + value + "` (n, d, load, flat)");
    s.axis = *axis;
  } else if (key == "variant") {
    s.variant = value;
  } else if (key == "seed") {
    s.seed = number<std::uint64_t>(line, key, value);
  } else if (key == "ttl") {
    s.options.ttl = number<std::uint32_t>(line, key, value);
  } else if (key == "walkers") {
    if (value == "degree") {
      s.options.walkers_per_degree = true;
    } else {
      s.options.walkers = number<std::uint32_t>(line, key, value);
      if (s.options.walkers == 0) throw SuiteParseError(line, "`walkers` must be positive");
    }
  } else if (key == "keyspace_bits") {
    s.options.keyspace_bits = number<unsigned>(line, key, value);
    if (s.options.keyspace_bits == 0 || s.options.keyspace_bits > 62) {
      throw SuiteParseError(line, "`keyspace_bits` must be in [1, 62]");
    }
  } else if (key == "address_width") {
    s.address_width = number<unsigned>(line, key, value);
    if (s.address_width == 0 || s.address_width > 64) throw SuiteParseError(line, "`address_width` must be in [1, 64]");
  } else if (key == "zones") {
    if (value != "balanced" && value != "flat" && value != "chain") {
      throw SuiteParseError(line, "unknown zone layout `" + value + "`");
    }
    s.options.zones = value;
  } else if (key == "zone_arity") {
    s.options.zone_arity = number<std::size_t>(line, key, value);
    if (s.options.zone_arity == 0) throw SuiteParseError(line, "`zone_arity` must be positive");
  } else if (key == "rules") {
    s.options.rules = boolean(line, key, value);
  } else if (key == "aggregate") {
    s.options.aggregate = boolean(line, key, value);
  } else {
    throw SuiteParseError(line, "unknown key `" + key + "`");
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> Scenario::points() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t nodes : n) {
    if (d_per_node) {
      out.emplace_back(nodes, *d_per_node * nodes);
    } else {
      for (std::size_t objects : d) out.emplace_back(nodes, objects);
    }
  }
  return out;
}

Suite parse_suite(std::istream& in) {
  Suite suite;
  std::set<std::string> names;
  Scenario* current = nullptr;
  std::string raw;
  std::size_t line = 0;
  auto finish = [&]() {
    if (current && current->protocol.empty()) {
      throw SuiteParseError(current->line, "scenario `" + current->name + "` has no protocol");
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw SuiteParseError(line, "unterminated section header");
      auto words = split(std::string_view(text).substr(1, text.size() - 2), " \t");
      if (words.size() != 2 || words[0] != "scenario") {
        throw SuiteParseError(line, "section header must be `[scenario NAME]`");
      }
      if (!names.insert(words[1]).second) throw SuiteParseError(line, "duplicate scenario `" + words[1] + "`");
      finish();
      suite.scenarios.emplace_back();
      current = &suite.scenarios.back();
      current->name = words[1];
      current->line = line;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw SuiteParseError(line, "expected `key = value`");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty() || value.empty()) throw SuiteParseError(line, "expected `key = value`");
    if (!current) {
      if (key != "seed") throw SuiteParseError(line, "only `seed` may appear before the first scenario");
      suite.seed = number<std::uint64_t>(line, key, value);
      continue;
    }
    apply_key(*current, line, key, value);
  }
  finish();
  return suite;
}

Suite parse_suite_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read suite file " + path.string());
  return parse_suite(in);
}

std::vector<net::TopologyChange> resolve_script(const std::vector<ScriptStep>& script, std::size_t n,
                                                unsigned address_width) {
  std::vector<net::TopologyChange> out;
  std::vector<net::NodeId> joined;
  std::uint32_t next_id = static_cast<std::uint32_t>(n);
  for (const ScriptStep& step : script) {
    switch (step.kind) {
      case ScriptStep::Kind::join: {
        net::JoinChange join;
        for (auto v : step.nodes) join.links.push_back(net::NodeId{v});
        out.emplace_back(std::move(join));
        joined.push_back(net::NodeId{next_id++});
        break;
      }
      case ScriptStep::Kind::leave:
        out.emplace_back(net::LeaveChange{net::NodeId{step.nodes.front()}});
        std::erase(joined, net::NodeId{step.nodes.front()});
        break;
      case ScriptStep::Kind::leave_joined:
        if (joined.empty()) throw net::InvalidScenario("`leave joined` with no joined node");
        out.emplace_back(net::LeaveChange{joined.back()});
        joined.pop_back();
        break;
      case ScriptStep::Kind::readdress: {
        auto address = net::parse_address(step.address, address_width);
        if (!address) throw net::InvalidScenario("bad address `" + step.address + "` in script");
        out.emplace_back(net::ReaddressChange{net::NodeId{step.nodes.front()}, *address});
        break;
      }
    }
  }
  return out;
}

}  // namespace dloc::suite
