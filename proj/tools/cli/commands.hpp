#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracbvp::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kIoError = 1,          ///< unreadable/malformed input, unwritable output, bad flags
    kValidationError = 2,  ///< problem violates a well-posedness hypothesis
    kCertificateFailed = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --output is given; diagnostics always go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracbvp::cli
