#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrtc::cli {

/// Process exit codes. Every failure prints one diagnostic line to stderr.
enum class ExitCode : int {
    ok = 0,
    /// Bad or missing command-line flags.
    usage = 2,
    /// Malformed data file.
    parse = 3,
    /// Invalid parameter values (flags or config file).
    config = 4,
    /// I/O failures, degenerate inputs and other runtime errors.
    runtime = 5,
};

/// Runs the `lrtc` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Environment variable holding the default --jobs value.
inline constexpr const char* kJobsEnv = "LRTC_JOBS";

} // namespace lrtc::cli
