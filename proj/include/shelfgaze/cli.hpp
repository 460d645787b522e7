#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shelfgaze::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kDomainError = 2,
};

/// Runs the command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shelfgaze::cli
