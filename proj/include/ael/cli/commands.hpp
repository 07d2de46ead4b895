#pragma once

#include <iosfwd>

namespace ael::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,
    kExitConfig = 2,
    kExitConvergence = 3,
    kExitValidation = 4,
};

/// Entry point of the `ael` tool. CSV output goes to output.path ("-" is
/// `out`); progress and diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ael::cli
