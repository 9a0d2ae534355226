#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transplanck::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,     ///< usage or configuration error
  kDomain = 3,     ///< a mathematical domain error
  kNumerical = 4,  ///< non-convergence, fit mismatch, blow-up
};

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` unless an output path is configured; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transplanck::cli
