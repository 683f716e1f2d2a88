#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace votexfer::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInvalid = 2,       ///< bad flags, malformed input, domain violations
    kTie = 3,           ///< tied district under --tie-policy reject
    kPartialSweep = 4,  ///< at least one sweep cell failed
};

/// Runs the command line. args[0] is the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace votexfer::cli
