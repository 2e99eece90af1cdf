#pragma once

#include <ostream>

namespace eforge::cli {

enum ExitCode : int {
  kConsistent = 0,
  kUsageError = 1,
  kHypothesisViolated = 2,
  kConclusionViolated = 3,
};

/// Runs the command line and returns the process exit status. Summaries go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eforge::cli
