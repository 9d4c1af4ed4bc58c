#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semsnap::cli {

enum ExitCode : int { kClean = 0, kRelationsFound = 1, kUsageError = 2, kApplyError = 3 };

// Runs one command line (args excludes the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semsnap::cli
