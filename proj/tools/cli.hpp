#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxlin::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one invocation. `args` excludes the program name. Normal output goes
/// to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxlin::cli
