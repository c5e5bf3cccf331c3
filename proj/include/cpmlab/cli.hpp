#pragma once

#include <iosfwd>

namespace cpm::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

// Parses argv, runs one subcommand and writes the report to --out or `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpm::cli
