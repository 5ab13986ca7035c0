#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gns {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the `gns` binary.
enum ExitCode : int { kExitPass = 0, kExitVerificationFailure = 1, kExitUsage = 2, kExitDivergence = 3 };

/// Entry point of the command-line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gns
