#pragma once

#include <iosfwd>

namespace gchan {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitUnsupported = 3,
};

/// Entry point of gchan-cli with injectable streams. Reports go to `out`
/// (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gchan
