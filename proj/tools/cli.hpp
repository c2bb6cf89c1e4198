#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace secset::cli {

enum ExitCode : int { kPositive = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

/// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secset::cli
