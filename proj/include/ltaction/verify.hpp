#pragma once

// Named verification suites replaying the published examples and the
// structural properties of the action.

#include <optional>
#include <string>
#include <vector>

namespace ltaction::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  int failures() const;
};

struct Options {
  std::optional<int> q;      // restrict suites that sweep q
  unsigned threads = 0;      // 0: hardware concurrency
  unsigned long seed = 1;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name, const Options& options = {});

}  // namespace ltaction::verify
