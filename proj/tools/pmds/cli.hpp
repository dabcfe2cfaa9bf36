#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmds::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericError = 3;

/// Runs one `pmds` invocation (arguments exclude the program name) and
/// returns its exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pmds::cli
