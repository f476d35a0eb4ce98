#pragma once

#include <iosfwd>

namespace framedvs {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,           // schedulable / success
  kExitNegative = 1,     // not schedulable, infeasible, deadline missed
  kExitInvalidInput = 2  // malformed files or arguments
};

/// Entry point of the `framedvs` tool. Subcommands: check, build,
/// simulate, sweep, soft-deadline, oracle.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace framedvs
