#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmvtm {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_violated = 1,
  exit_usage = 2,
  exit_inconclusive = 3,
};

/// Runs one command line (without the program name).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmvtm
