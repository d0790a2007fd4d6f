#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toda::cli {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNegative = 2;  // not TNN, non-real spectrum, non-general point
inline constexpr int kExitBlowup = 3;

// Runs the command line `args` (without the program name), writing reports to
// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace toda::cli
