#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace initpop {

/// Runs one `bench` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on a runtime failure and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace initpop
