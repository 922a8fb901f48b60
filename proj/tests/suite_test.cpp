#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dloc/suite/registry.hpp"
#include "dloc/suite/runner.hpp"
#include "dloc/suite/scenario.hpp"
#include "dloc/suite/svg_plot.hpp"

using namespace dloc;

namespace {

suite::Suite parse(const std::string& text) {
  std::istringstream in(text);
  return suite::parse_suite(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const suite::SuiteParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(e.line())), std::string::npos) << e.what();
    return e.line();
  }
  return 0;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(SuiteParser, ReadsScenarios) {
  const auto s = parse(
      "seed = 3\n"
      "[scenario a]\n"
      "protocol = chord   # trailing comment\n"
      "n = 16..128\n"
      "d = 100, 200\n"
      "topology = balanced-tree\n"
      "arity = 3\n"
      "[scenario b]\n"
      "protocol = random-walk\n"
      "d = 25n\n"
      "n = 16 32\n"
      "walkers = degree\n"
      "ttl = 9\n");
  EXPECT_EQ(s.seed, 3u);
  ASSERT_EQ(s.scenarios.size(), 2u);
  const auto& a = s.scenarios[0];
  EXPECT_EQ(a.protocol, "chord");
  EXPECT_EQ(a.line, 2u);
  EXPECT_EQ(a.points().size(), 8u);
  EXPECT_EQ(a.topology.arity, 3u);
  EXPECT_EQ(a.lookups_for(200), 2000u);
  const auto& b = s.scenarios[1];
  EXPECT_EQ(b.points(), (std::vector<std::pair<std::size_t, std::size_t>>{{16, 400}, {32, 800}}));
  EXPECT_TRUE(b.options.walkers_per_degree);
  EXPECT_EQ(b.options.ttl, 9u);
}

TEST(SuiteParser, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("[scenario a]\nprotocol = chord\ncolour = red\n"), 3u);
  EXPECT_EQ(error_line("[scenario a]\nprotocol = teleport\n"), 2u);
  EXPECT_EQ(error_line("[scenario a]\nprotocol = chord\n[scenario a]\nprotocol = dns\n"), 3u);
  EXPECT_EQ(error_line("\n\n[scenario a]\nn = 16\n"), 3u);
  EXPECT_EQ(error_line("protocol = chord\n"), 1u);
  EXPECT_EQ(error_line("[scenario a]\nprotocol = chord\nn = 0\n"), 3u);
  EXPECT_EQ(error_line("[scenario a]\nprotocol = chord\ntopology = torus\n"), 3u);
  EXPECT_EQ(error_line("[scenario a]\nprotocol = chord\nn = sixteen\n"), 3u);
  EXPECT_EQ(error_line("[scenario a\n"), 1u);
}

TEST(SuiteParser, ScriptsResolveJoinedNodes) {
  const auto s = parse("[scenario a]\nprotocol = dns\nn = 8\nscript = join 0 1; leave joined; readdress 3 10.0.0.99\n");
  const auto changes = suite::resolve_script(s.scenarios[0].script, 8, 32);
  ASSERT_EQ(changes.size(), 3u);
  EXPECT_EQ(std::get<net::LeaveChange>(changes[1]).node, net::NodeId(8));
  EXPECT_EQ(std::get<net::ReaddressChange>(changes[2]).address, net::Address(0x0a000063, 32));
}

TEST(Runner, EmptySuiteGivesHeaderOnly) {
  const auto result = suite::run_suite(parse("seed = 1\n"));
  EXPECT_EQ(result.metrics_csv(), std::string(proto::kMetricsCsvHeader) + "\n");
  EXPECT_TRUE(result.table.rows.empty());
}

TEST(Runner, SameSeedSameBytes) {
  const auto s = parse("[scenario c]\nprotocol = chord\nn = 16\nd = 100\nseed = 1\n");
  const auto a = suite::run_suite(s);
  const auto b = suite::run_suite(s);
  EXPECT_EQ(a.metrics_csv(), b.metrics_csv());
  EXPECT_EQ(a.points_csv(), b.points_csv());
  const auto c = suite::run_suite(parse("[scenario c]\nprotocol = chord\nn = 16\nd = 100\nseed = 2\n"));
  EXPECT_NE(a.points_csv(), c.points_csv());
}

TEST(Runner, FailingScenarioIsIsolated) {
  suite::RunOptions options;
  options.sim.event_budget = 2000;
  const auto result = suite::run_suite(
      parse("[scenario heavy]\nprotocol = flooding\ntopology = complete\nn = 64\n"
            "[scenario light]\nprotocol = central\nn = 8\nd = 10\n"),
      options);
  ASSERT_EQ(result.scenarios.size(), 2u);
  ASSERT_TRUE(result.scenarios[0].error.has_value());
  EXPECT_NE(result.scenarios[0].error->find("n=64"), std::string::npos);
  EXPECT_FALSE(result.scenarios[1].error.has_value());
  EXPECT_EQ(result.scenarios[1].records.size(), 1u);
  EXPECT_FALSE(result.ok());
}

TEST(Runner, FilterKeepsOneProtocol) {
  suite::RunOptions options;
  options.filter = "central";
  const auto result = suite::run_suite(
      parse("[scenario a]\nprotocol = central\nn = 8\nd = 10\n[scenario b]\nprotocol = gossip\nn = 8\nd = 10\n"), options);
  ASSERT_EQ(result.scenarios.size(), 1u);
  EXPECT_EQ(result.scenarios[0].scenario.protocol, "central");
}

TEST(Runner, MatchesGoldenOutputs) {
  const std::filesystem::path golden = DLOC_GOLDEN_DIR;
  const auto result = suite::run_suite(suite::parse_suite_file(golden / "mini.suite"));
  const auto out = std::filesystem::temp_directory_path() / "dloc-golden-test";
  suite::write_outputs(result, out);
  for (const char* file : {"metrics.csv", "points.csv"}) {
    EXPECT_EQ(slurp(out / file), slurp(golden / (std::string("mini.") + file))) << file;
  }
  EXPECT_TRUE(std::filesystem::exists(out / "table1.txt"));
  EXPECT_TRUE(std::filesystem::exists(out / "plots" / "links_n.svg"));
  std::filesystem::remove_all(out);
}

TEST(Registry, CatalogFollowsTableOrder) {
  const auto& cat = suite::protocol_catalog();
  ASSERT_EQ(cat.size(), 8u);
  EXPECT_EQ(cat.front().label, "central");
  EXPECT_EQ(cat.back().label, "random-walk");
  EXPECT_TRUE(suite::is_known_protocol("consistent-hashing"));
  EXPECT_FALSE(suite::is_known_protocol("pastry"));
  EXPECT_THROW(suite::make_factory("pastry", {}), net::InvalidScenario);
}

TEST(SvgPlot, DrawsPositivePointsOnly) {
  const auto svg = suite::render_loglog_svg("t", "n", "links",
                                            {{"flooding", {{8, 64}, {16, 256}, {32, 0}}}, {"gossip", {{8, 0}}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("flooding"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
