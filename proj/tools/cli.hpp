#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qshift::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kNumeric = 3,
};

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qshift::cli
