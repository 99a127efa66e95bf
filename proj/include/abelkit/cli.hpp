#ifndef ABELKIT_CLI_HPP
#define ABELKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace abelkit::cli {

// Exit codes: 0 success, 1 oracle mismatch, 2 invalid input, 3 resource guard.
enum ExitCode { kOk = 0, kMismatch = 1, kInvalidInput = 2, kGuard = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace abelkit::cli

#endif
