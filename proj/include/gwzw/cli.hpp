#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwzw {

enum ExitCode { kExitPass = 0, kExitIdentityFailed = 1, kExitUsage = 2 };

/// Runs one command line (argv[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace gwzw
