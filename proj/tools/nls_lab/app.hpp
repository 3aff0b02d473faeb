#pragma once

#include <ostream>
#include <span>
#include <string>

namespace nlslab::cli {

/// Exit codes: 0 success, 1 verify failure, 2 usage or configuration error,
/// 3 numerical failure, 4 I/O failure.
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Parses `args` (without the program name) and runs the subcommand.
/// Reports go to `out` unless --output names a file; diagnostics, including
/// the {error_kind, context} JSON of a failure, go to `err`.
int run_subcommand(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nlslab::cli
