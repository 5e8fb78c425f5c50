#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace histospline::cli {

/// Exit codes: 0 success, 2 input or validation error, 3 mathematical
/// precondition failure (for example too few cells for the default boundary).
enum ExitCode : int { kOk = 0, kInputError = 2, kMathError = 3 };

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histospline::cli
