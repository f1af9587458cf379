#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spreadpc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

// Entry point of the spreadpc tool. Reports go to `out` (or --out), one-line
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Cross-module consistency suite behind `spreadpc check`.
std::vector<CheckResult> run_checks(std::ostream* progress = nullptr);

}  // namespace spreadpc::cli
