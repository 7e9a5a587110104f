#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace asymq::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kResourceCap = 3,
};

// Arguments exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asymq::cli
