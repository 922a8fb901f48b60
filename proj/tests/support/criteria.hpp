#pragma once

#include <string>
#include <vector>

#include "dloc/suite/runner.hpp"

namespace dloc::check {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;  // failures first, then a summary line

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  std::string summary() const;
};

Outcome table_reproduction(const suite::SuiteResult& result);
Outcome conjecture(const suite::SuiteResult& result);
Outcome chord_properties();
Outcome gossip_convergence();
Outcome dns_properties();
Outcome aggregation_safety();
Outcome flooding_properties();
Outcome random_walk_properties();
Outcome determinism(const suite::Suite& suite, const suite::SuiteResult& first);
Outcome fit_self_test();

}  // namespace dloc::check
