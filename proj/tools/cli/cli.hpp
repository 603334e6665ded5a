#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genfrac::cli {

/// Exit codes of run().
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_numerical = 3,
    exit_domain = 4,
};

/// Runs one `genfrac` invocation. `args` excludes the program name.
/// Results go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genfrac::cli
