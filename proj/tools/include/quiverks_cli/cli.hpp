#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qks::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// A mathematical negative, e.g. `iso` on non-isomorphic inputs.
  kExitNegative = 1,
  kExitInputError = 2,
  /// An internal invariant failed; always a bug.
  kExitInternal = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qks::cli
