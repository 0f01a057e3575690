#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipreach::cli {

enum ExitCode : int {
  kOk = 0,         // safe, or converged
  kUnsafe = 1,     // a witness was found
  kUndecided = 2,  // unknown verdict or a bound that did not converge
  kFailure = 3,    // bad input, I/O or evaluation error
};

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipreach::cli
