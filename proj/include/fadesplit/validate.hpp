#pragma once

#include <ostream>
#include <string>
#include <vector>

// Self-check suites behind the `validate` CLI command: each suite
// cross-checks one layer of the stack against an independent method and
// reports pass/fail. All suites are deterministic.

namespace fadesplit {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidateConfig {
  bool quick = false;       // reduced grids/sample counts, < 60 s total
  double lambda_tol = 1e-12;  // solver bisection tolerance (fault injection)
};

// Runs all suites, streaming one line per suite; returns the results.
std::vector<SuiteResult> run_validation(const ValidateConfig& cfg,
                                        std::ostream& out);

}  // namespace fadesplit
