#pragma once

#include <string>
#include <vector>

namespace adskg {

// One measured quantity. Error checks pass when value <= hi; range checks when lo <= value <= hi.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool is_range = false;
  bool pass() const { return value == value && value <= hi && (!is_range || value >= lo); }
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const;
  double max_err() const;  // largest value among error checks
};

// The eleven acceptance criteria, numbered 1..11.
int acceptance_count();
SuiteResult run_criterion(int index);

// Module suites: specfun, harmonics, geometry, modes, expansions, symplectic, isometry,
// minkowski. "all" is the concatenation.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
SuiteResult run_suite(const std::string& name);

}  // namespace adskg
