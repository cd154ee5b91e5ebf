#pragma once

// The `mobius` command line. Exit codes: 0 success, 2 input error,
// 3 semantic invariant violation, 4 mathematical refusal or failed check.

#include <iosfwd>
#include <string>
#include <vector>

namespace mobius::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobius::cli
