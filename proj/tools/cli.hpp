#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toehold::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGoldenMismatch = 3;

/// Runs one command line (args excludes the program name). Data goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toehold::cli
