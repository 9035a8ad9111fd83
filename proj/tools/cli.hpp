#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torharm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotConverged = 2 };

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torharm::cli
