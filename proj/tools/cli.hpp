#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psl::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kData = 3,
};

/// Runs the command line `args` (without the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psl::cli
