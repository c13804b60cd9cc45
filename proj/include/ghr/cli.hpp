#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kSearchSpaceTooLarge = 3,
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghr::cli
