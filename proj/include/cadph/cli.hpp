#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cadph {

enum ExitCode : int { exit_ok = 0, exit_counterexamples = 1, exit_invalid = 2, exit_usage = 3 };

/// Runs the command line (arguments after the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cadph
