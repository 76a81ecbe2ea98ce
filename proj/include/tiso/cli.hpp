#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiso {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRejected = 2;

/// Runs one subcommand (args exclude the program name), writes a single JSON
/// report to out and diagnostics to err, and returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tiso
