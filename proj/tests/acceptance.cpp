#include <chrono>
#include <functional>
#include <iostream>

#include "criteria.hpp"
#include "dloc/suite/scenario.hpp"

#ifndef DLOC_DEFAULT_SUITE
#define DLOC_DEFAULT_SUITE "suites/default.suite"
#endif

namespace {

std::string clip(const std::string& text, std::size_t limit = 600) {
  return text.size() <= limit ? text : text.substr(0, limit) + " ...";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : DLOC_DEFAULT_SUITE;
  const auto started = std::chrono::steady_clock::now();
  const auto suite = dloc::suite::parse_suite_file(path);
  const auto result = dloc::suite::run_suite(suite);
  for (const auto& e : result.errors) std::cout << "suite error: " << e << '\n';

  using dloc::check::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Table 1 reproduction", [&] { return dloc::check::table_reproduction(result); }},
      {"S-To-N conjecture", [&] { return dloc::check::conjecture(result); }},
      {"Chord properties", dloc::check::chord_properties},
      {"Gossip convergence", dloc::check::gossip_convergence},
      {"DNS resolution and failures", dloc::check::dns_properties},
      {"Prefix aggregation safety", dloc::check::aggregation_safety},
      {"Flooding", dloc::check::flooding_properties},
      {"Random walk", dloc::check::random_walk_properties},
      {"Determinism", [&] { return dloc::check::determinism(suite, result); }},
      {"fit_scaling self-test", dloc::check::fit_self_test},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("threw: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": "
              << clip(o.summary()) << '\n';
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << secs << " s\n";
  return failed == 0 ? 0 : 1;
}
