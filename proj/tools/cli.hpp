#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combinf::cli {

/// Exit codes: 0 success, 1 usage or validation error, 2 data error.
enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

/// Runs `combinf <args...>`; args excludes the program name. Results go to
/// `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combinf::cli
