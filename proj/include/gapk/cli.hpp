#pragma once

#include <ostream>

namespace gapk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFalse = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv, runs one subcommand and writes its JSON report to --out
/// (default: `out`). Error reports go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace gapk::cli
