#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holo_interp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCriterionFailed = 1,
  kInputError = 2,
  kNumericalGuard = 3,
};

/// Runs the holo-interp command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace holo_interp::cli
