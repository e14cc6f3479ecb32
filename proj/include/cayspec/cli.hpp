#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cayspec {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 2,
  exit_hypothesis_violated = 3,
  exit_error = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cayspec
