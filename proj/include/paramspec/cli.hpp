#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace paramspec::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kOverflow = 3 };

/// Runs one invocation. `args` excludes the program name. Diagnostics go to
/// `err`, results to `out` unless redirected with -o.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paramspec::cli
