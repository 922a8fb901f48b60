#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dloc/audit/table1.hpp"
#include "dloc/suite/registry.hpp"
#include "dloc/suite/runner.hpp"

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

int run(const std::string& suite_file, const std::string& out_dir, std::optional<std::uint64_t> seed,
        std::optional<std::string> filter) {
  const dloc::suite::Suite suite = dloc::suite::parse_suite_file(suite_file);
  dloc::suite::RunOptions options;
  options.seed = seed;
  options.filter = filter;
  const auto result = dloc::suite::run_suite(suite, options);
  dloc::suite::write_outputs(result, out_dir);

  std::cout << result.table.render_text() << '\n' << result.conjecture.render();
  for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';
  std::cout << "outputs written to " << out_dir << '\n';
  return result.ok() ? 0 : 1;
}

int list_protocols() {
  for (const auto& p : dloc::suite::protocol_catalog()) {
    std::cout << p.label << "\t" << p.family << "\t" << p.summary << '\n';
  }
  return 0;
}

int explain(const std::string& protocol, const std::string& out_dir) {
  const auto* claims = dloc::audit::find_claims(protocol);
  if (!claims) {
    std::cerr << "unknown protocol: " << protocol << '\n';
    return 2;
  }
  std::cout << claims->title << " (" << protocol << ")\n";
  std::cout << "fails: " << (claims->failing.empty() ? "none" : claims->failing) << '\n';

  std::vector<std::string> measured;
  std::ifstream in(std::filesystem::path(out_dir) / "table1.csv");
  for (std::string line; std::getline(in, line);) {
    auto fields = split_csv_line(line);
    if (!fields.empty() && fields[0] == protocol) {
      measured.assign(fields.begin() + 1, fields.end());
      break;
    }
  }
  for (std::size_t i = 0; i < dloc::audit::kColumns.size(); ++i) {
    std::cout << "  " << dloc::audit::column_title(dloc::audit::kColumns[i]) << ": " << claims->cells[i];
    if (i < measured.size()) std::cout << "  measured " << measured[i];
    std::cout << '\n';
  }
  if (measured.empty()) std::cout << "no measurements in " << out_dir << "; run a suite first\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-location protocol simulation lab"};
  app.require_subcommand(1);

  std::string suite_file;
  std::string out_dir = "dloc-out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> filter;
  auto* run_cmd = app.add_subcommand("run", "Run a suite and write CSV, reports and plots");
  run_cmd->add_option("suite-file", suite_file, "Suite file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seed", seed, "Override the suite seed");
  run_cmd->add_option("--filter", filter, "Only run scenarios of this protocol");

  app.add_subcommand("list-protocols", "List the available protocols");

  std::string protocol;
  auto* explain_cmd = app.add_subcommand("explain", "Show a protocol's Table 1 row and its last measured classes");
  explain_cmd->add_option("protocol", protocol, "Protocol label")->required();
  explain_cmd->add_option("--out", out_dir, "Output directory of the last run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(suite_file, out_dir, seed, filter);
    if (*explain_cmd) return explain(protocol, out_dir);
    return list_protocols();
  } catch (const std::exception& e) {
    std::cerr << "dloc: " << e.what() << '\n';
    return 2;
  }
}
