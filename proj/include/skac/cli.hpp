#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skac {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --output is given; diagnostics go to `err`. Relative
/// --output paths are resolved against $SKAC_OUTPUT_DIR when it is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skac
