#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsr {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // property check failed or disagreement
inline constexpr int kExitUsage = 2;    // bad flags, bad input, I/O

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsr
