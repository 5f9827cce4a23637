#pragma once

#include <string>
#include <vector>

namespace betaret::cli {

enum ExitCode { kOk = 0, kOther = 1, kUsage = 2, kPrecision = 3, kCap = 4 };

struct Result {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Runs one invocation; `args` excludes the program name.
Result run(const std::vector<std::string>& args);

}  // namespace betaret::cli
