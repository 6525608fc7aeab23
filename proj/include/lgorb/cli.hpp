#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgorb {

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitMismatch = 2 };

/// Command-line entry point without the program name, e.g.
/// {"hrr", "models/mu2_x2.json", "--p", "P", "--q", "P", "--format", "json"}.
/// Returns 0 on success or verdict equal, 2 on a mathematical mismatch and 1
/// on any input error; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgorb
