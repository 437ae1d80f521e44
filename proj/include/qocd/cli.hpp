#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qocd::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 1,
    kDataError = 2,
    kInternalError = 3,
};

/// Entry point for the `qocd` tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace qocd::cli
