#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ksobs::cli {

/// Exit codes: 0 for SAT, VERIFIED or FIXPOINT; 1 for UNSAT, CONTRADICTION
/// or NOT-FORCED; 2 for usage and input errors.
enum Exit : int { kPositive = 0, kNegative = 1, kUsage = 2 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksobs::cli
