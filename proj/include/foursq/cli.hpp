#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foursq::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kFailuresFound = 1,
    kUsage = 2,
    kRange = 3,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace foursq::cli
