#pragma once

#include <iosfwd>

namespace latconv::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kVerdictFailure = 3,
    kResource = 4,
};

// Entry point behind the latconv binary. Regular output goes to `out`,
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latconv::cli
