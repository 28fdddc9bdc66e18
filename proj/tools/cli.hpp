#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ugrowth::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 2;
inline constexpr int kGuardError = 3;
inline constexpr int kInvariantError = 4;

/// Runs one command line (without the program name). Reports go to `out`,
/// errors to `err` as a JSON object {"error": {"category", "message"}}.
/// A report whose checks fail still prints, then returns kInvariantError.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ugrowth::cli
