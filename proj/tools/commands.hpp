#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linrel::cli {

enum ExitCode : int { kAllTrue = 0, kSomeFalse = 1, kInputError = 2 };

/// Runs the command line `args` (without the program name). Returns the
/// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linrel::cli
