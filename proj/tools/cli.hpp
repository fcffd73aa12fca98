#pragma once

#include <ostream>

namespace bomp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kBudgetError = 3,
};

/// Entry point of the `bomp` command-line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bomp::cli
