#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minforge::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_io = 1,
    exit_structural = 2,
    exit_validation = 3,
    exit_no_path = 4,
};

/// Runs `min` with args[0] as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace minforge::cli
