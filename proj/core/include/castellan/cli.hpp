#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace castellan::cli {

/// Exit codes: 0 success, 1 runtime budget exceeded, 2 usage error,
/// 3 internal invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBudget = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Dispatches one invocation. `args` excludes the program name. Results go
/// to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace castellan::cli
