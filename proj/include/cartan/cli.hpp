#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cartan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `cartan` tool. Results go to `out` (or --out),
/// diagnostics to `err`. Returns 0 on success, 1 on domain or precondition
/// failures, 2 on argument errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

/// "lo:hi" where each end is a real, optionally followed or replaced by
/// "pi" (e.g. "0:2pi", "-pi:pi"). Throws ArgumentError.
std::pair<double, double> parse_range(const std::string& text);

}  // namespace cartan::cli
