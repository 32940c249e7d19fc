#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualjc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationFailed = 1,
    kConfigError = 2,
    kPhysicalAssumption = 3,
};

/// Runs one invocation of the command-line tool. `args` excludes the program
/// name. Results go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualjc::cli
