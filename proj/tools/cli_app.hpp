#pragma once

#include <iosfwd>

namespace mtsp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSchemaError = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kOracleLimit = 3;

/// Runs the command line against the given streams; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtsp::cli
