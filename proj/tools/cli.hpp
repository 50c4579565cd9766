#ifndef INVSTAT_CLI_HPP
#define INVSTAT_CLI_HPP

#include <string>
#include <vector>

namespace invstat::cli {

/// Run the command line given argv-style arguments (program name excluded).
/// Returns the process exit code: 0 success, 2 input/validation error,
/// 3 numerical failure.
int run(const std::vector<std::string>& args);

} // namespace invstat::cli

#endif
