#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cartier::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kUnsupported = 3,
  kBudgetExceeded = 4,
};

/// Runs the command line `args` (without the program name). Structured
/// output goes to `out`, human-readable summaries and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartier::cli
