#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qha::cli {

/// Runs the command line (argv without the program name). Returns the exit
/// code: 0 all checks pass, 1 a check or the estimator fails, 2 config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qha::cli
