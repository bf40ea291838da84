#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace keller::cli {

/// Exit codes.
inline constexpr int kOk = 0;
/// A yes/no command answered no (no inverse, no finite order, P o Q != P).
inline constexpr int kNegative = 1;
/// Bad usage, unreadable or unparsable input, input outside a precondition.
inline constexpr int kUsage = 2;
/// An internal self-check or a theorem-level consistency check failed.
inline constexpr int kFailure = 3;

/// Runs the command line `args` (without the program name). Reports go to
/// out (or --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace keller::cli
