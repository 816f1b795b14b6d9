#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace solenoid {

/// Exit codes of the command line tool.
enum ExitCode : int { kSuccess = 0, kVerdictFalse = 1, kUsage = 2 };

/// Runs one CLI invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solenoid
