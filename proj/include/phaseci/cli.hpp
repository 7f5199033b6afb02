#ifndef PHASECI_CLI_HPP
#define PHASECI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace phaseci::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInputError = 2,      // bad flags, files, or parameter domains
    kAssumptionError = 3, // model assumptions fail for the request
};

/// Runs the command line given the arguments after the program name.
/// Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phaseci::cli

#endif // PHASECI_CLI_HPP
