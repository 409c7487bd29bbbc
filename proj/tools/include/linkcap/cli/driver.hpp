#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace linkcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Parses `args` (without the program name), runs the command and maps
/// failures to exit codes: 2 for configuration problems, 3 for numeric ones.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linkcap::cli
