#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vldl {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_positive = 0,  // satisfiable, holds, agreement
  exit_negative = 1,  // unsatisfiable, violated, disagreement
  exit_input = 2,
  exit_resource = 3
};

/// Runs the command line (without the program name) and returns the exit
/// code.  Normal output goes to out, diagnostics to err.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace vldl
