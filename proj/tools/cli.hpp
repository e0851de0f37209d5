#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace salbound::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternal = 1,
    kUsage = 2,
    kSolver = 3,
    kVerification = 4,
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` (or to --out) and diagnostics to `err`. Returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from SALBOUND_THREADS; 0 when unset or invalid.
int thread_cap_from_environment();

}  // namespace salbound::cli
