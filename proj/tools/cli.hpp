#pragma once

#include <iosfwd>

namespace nagumo::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitNumerical = 4;

/// Runs one command line. Primary output goes to `out` (or the --output
/// file), the resolved configuration and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nagumo::cli
