#pragma once

#include <ostream>

namespace hweyl::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kValidation = 2,
  kResource = 3,
  kVerificationFailed = 4,
};

// Runs the command line. Reports go to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hweyl::cli
