#pragma once

#include <string>
#include <vector>

namespace mgrz {

struct CliResult {
    int exit_code = 0;
    std::string out;  // what goes to stdout
};

// Runs one CLI invocation; argv excludes the program name.
// Exit codes: 0 success/valid, 1 countermodel/refuted (still a successful
// computation), 2 input error, 3 internal invariant violation.
CliResult run_cli(const std::vector<std::string>& argv);

}  // namespace mgrz
