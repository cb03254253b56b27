#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cstnu {

/// Runs the `cstnu` command line on `args` (without the program name).
/// Returns 0 on success, 1 for a negative verdict or violations, 2 for usage
/// or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cstnu
