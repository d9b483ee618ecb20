#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seisgrid::cli {

/// Parses the command line and runs one subcommand. Returns the process exit
/// code: 0 on success, 1 on analysis or input errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seisgrid::cli
