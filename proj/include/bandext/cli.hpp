#pragma once

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

namespace bandext::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the bandext tool. Subcommands: extrapolate, bench,
/// truncation, figure. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Angle in radians from "1.5708", "pi", "pi/2", "3pi/4", "3*pi/4" or "0.5*pi".
double parse_angle(std::string_view text);

/// "25:50,50:100" -> {(25,50), (50,100)}.
std::vector<std::pair<int, int>> parse_pairs(std::string_view text);

std::vector<int> parse_int_list(std::string_view text);

} // namespace bandext::cli
