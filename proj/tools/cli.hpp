#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ehsched::cli {

/// Runs one command line (args exclude the program name) and returns the
/// process exit status: 0 on success, 1 on a library error, 2 on usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ehsched::cli
