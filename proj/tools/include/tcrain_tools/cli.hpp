#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcrain::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitProcessingError = 3,
};

/// Entry point shared by the executable and the tests. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcrain::tools
