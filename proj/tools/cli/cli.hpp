#pragma once

// chaoscode command-line front end. Exit codes: 0 success, 1 I/O failure or
// replay mismatch, 2 argument/domain error, 3 numerical failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace chaoscode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// `args` excludes the program name. Results go to --out when given (plus a
/// <out>.manifest.json run manifest), otherwise to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace chaoscode::cli
