#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trop::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParseError = 2,
  kCapExceeded = 3,
  kInternalError = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trop::cli
