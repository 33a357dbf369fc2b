#pragma once

#include <ostream>

namespace treespan::cli {

inline constexpr int kExitSubgraph = 0;
inline constexpr int kExitNoMinor = 1;
inline constexpr int kExitOutsidePromise = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
/// detect: 0 contains subgraph, 1 no minor, 2 outside promise suspected.
/// verify / analyze-spectrum / gen: 0 when every check passes, 1 otherwise.
/// Malformed arguments or input files: 64.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treespan::cli
