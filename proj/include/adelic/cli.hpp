#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adelic {

// Dispatches one command line. Exit codes: 0 success, 2 validation/usage
// errors, 1 budget or internal errors. Errors go to err and never print
// partial results.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adelic
