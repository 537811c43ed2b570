#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace backflow::cli {

// Runs the command line; returns the process exit code (0 success, 1 numeric
// failure or failed verification, 2 usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace backflow::cli
