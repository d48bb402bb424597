#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seersc {

// Entry point of the seersc command line. args[0] is the program name.
// Returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seersc
