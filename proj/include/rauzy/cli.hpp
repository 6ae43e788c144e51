#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rauzy::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kReducible = 3,
  kGuard = 4,
  kVerification = 5,
};

/// Runs the command line `args` (without the program name) writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace rauzy::cli
