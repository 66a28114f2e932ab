#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lattice_flows::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

/// Runs `simulate ...` or `verify <suite> ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lattice_flows::cli
