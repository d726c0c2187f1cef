#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evoman::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (without the program name). Everything the command
/// prints goes to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evoman::cli
