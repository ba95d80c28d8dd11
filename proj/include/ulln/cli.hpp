#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ulln::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2, kIoError = 3 };

/// Runs the command line `args` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ulln::cli
