#pragma once

#include <iosfwd>

namespace oraclesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedRows = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the oraclesim tool; output goes to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oraclesim::cli
