#pragma once

#include <string>
#include <vector>

namespace covkit::cli {

/// Parses and executes a full command line (without the program name).
/// Exit codes: 0 success, 2 configuration or input error, 3 numeric
/// failure, 4 grid completed with failed cells.
int run(const std::vector<std::string>& args);

}  // namespace covkit::cli
