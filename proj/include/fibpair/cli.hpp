#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibpair::cli {

// Runs the command line given as argv-style tokens (program name excluded).
// Returns the process exit code: 0 success, 1 mathematical failure,
// 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibpair::cli
