#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltaction::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,            // bad flags or element expressions
  kUnsupported = 3,      // residue-degree parity, non-unit alpha0
  kPrecision = 4,        // a coefficient is not integral or not known modulo p^M
  kTreeCeiling = 5,      // enumeration would exceed the tree ceiling
  kVerifyFailed = 6,     // a verification suite reported failures
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltaction::cli
