#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mipkit {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // witness not confirmed, groups distinguished, failed check
  kExitUsage = 2,     // bad arguments, unreadable or malformed input, unmet hypothesis
  kExitResource = 3,  // a size bound was hit
  kExitInternal = 4,  // contradiction of a proven fact
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mipkit
