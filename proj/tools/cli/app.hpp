#ifndef CATMODES_CLI_APP_HPP
#define CATMODES_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace catmodes::cli {

/// Parses `args` (without the program name), dispatches the subcommand and
/// returns the process exit code: 0 success, 1 failed verification, 2 usage
/// or input error.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catmodes::cli

#endif  // CATMODES_CLI_APP_HPP
