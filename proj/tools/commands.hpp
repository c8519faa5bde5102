#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randsurf::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,         // usage, file and parse errors
    kInvalid = 2,       // validation and precondition failures
    kBudget = 3,        // arithmetic or enumeration budget exceeded
    kExhausted = 4,     // no good sample within the allowed tries
    kTableMismatch = 5, // a reproduced table row differs from the expected value
    kInternal = 6,      // a formula failed to produce an integer
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace randsurf::cli
