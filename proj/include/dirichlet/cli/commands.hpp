#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirichlet::cli {

enum ExitCode : int { kConverged = 0, kUsage = 1, kDiverged = 2, kMaxIters = 3 };

/// Entry point of the command-line tool; args exclude the program name.
/// solve|sweep|poincare|exhaust|schauder --config <path> [--out <dir>] [--seed <int>]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dirichlet::cli
