#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ictmc::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kInfeasible = 2,
  kNumericalFailure = 3,
};

/// Entry point of the `ictmc` tool. `args` excludes the program name.
/// The per-run summary goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ictmc::cli
