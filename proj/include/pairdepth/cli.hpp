#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairdepth {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitBoundViolated = 1, kExitUsage = 2 };

/// Runs `pairdepth <gen|depth|net|select|estimate-t> [flags]`. `args` excludes
/// the program name. Reports go to `out` (or the --out file) in one write.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairdepth
