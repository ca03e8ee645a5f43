#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptreal/verify.hpp"

namespace ptreal::cli {

/// Process exit codes. These are part of the command-line interface.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,  // bad flags, malformed or PT-violating input
  kIo = 2,
  kIncompleteBasis = 3,
  kRealityViolation = 4,
  kNonConvergence = 5,
  kClosureViolation = 6,
  kVerifyFailed = 7,
};

/// Runs one ptreal command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const VerifyHooks& hooks = {});

}  // namespace ptreal::cli
