#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqs {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitParse = 2,
    kExitInvalid = 3,
    kExitDegenerate = 4,
};

/// Runs the tool on `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqs
