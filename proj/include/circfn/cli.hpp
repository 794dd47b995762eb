#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circfn::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kNoSolution = 2,
  kInfiniteFamily = 3,
  kNegative = 4,  // not rational / not polynomial / not matched
};

/// Parses argv (argv[0] included), runs one subcommand and writes a single
/// JSON document. `in` backs `--input -`, `out` backs `--output -`.
int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace circfn::cli
