#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geomax::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNotConverged = 2,
};

/// Runs the command line `args` (without the program name) against the given
/// streams and returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace geomax::cli
