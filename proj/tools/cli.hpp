#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgp::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;
inline constexpr int kExitMultiComponent = 5;
inline constexpr int kExitDegenerate = 6;

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out` unless --out names a file; the JSON run report and diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgp::cli
