#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tiltedstop::cli {

// Exit codes: 0 success, 1 numeric or I/O failure, 2 invalid arguments.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Parses `args` (without the program name) and runs one subcommand. Results go
// to `out` (or the --output file); diagnostics are a single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace tiltedstop::cli
