#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinwalls::cli {

/// Exit codes shared by every command.
inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_mismatch = 3;

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spinwalls::cli
