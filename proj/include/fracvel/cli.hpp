#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracvel::cli {

enum ExitCode : int {
  success = 0,
  domain_error = 1,
  usage_error = 2,
  acceptance_failure = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fracvel::cli
