#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain or numerical error, failed selftest
inline constexpr int kExitUsage = 2;

/// Subcommands: gamma, levy, purity, sweep, bounds, selftest. `args` excludes
/// the program name. `--config FILE` (flat `key = value` lines named after
/// the long flags) may appear anywhere; explicit flags override the file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

std::string version();

}  // namespace lab::cli
