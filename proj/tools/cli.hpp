#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semfeat::cli {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      ///< validation, configuration or I/O problem
inline constexpr int kExitTolerance = 2;  ///< an invariance or performance assertion failed

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semfeat::cli
