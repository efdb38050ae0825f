// cli.hpp: batch command-line front end.
//
// Exit codes: 0 success, 1 numerical failure (non-convergence), 2 invalid
// input or usage.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geoqm::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoqm::cli
