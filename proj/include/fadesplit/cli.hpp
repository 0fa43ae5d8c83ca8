#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fadesplit {

// Exit codes: 0 success, 2 usage/config error, 3 validation or
// numerical failure, 4 resource budget exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitBudget = 4;

// Full command-line entry point (args excludes the program name).
// Results go to `out` unless the command writes to a file via --out;
// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fadesplit
