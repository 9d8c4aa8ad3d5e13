#ifndef CONGAMES_CLI_HPP
#define CONGAMES_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace congames {

// Exit codes of the command-line tool.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

// Runs the `congames` command line (args excludes the program name). Reports
// go to `out` (or the -o file), usage errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace congames

#endif  // CONGAMES_CLI_HPP
