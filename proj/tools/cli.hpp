#pragma once

#include <ostream>

namespace brennan::cli {

// Exit codes: 0 success / converged, 1 negative verdict (divergence, bound
// violation), 2 usage or numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitError = 2;

// Environment variable naming the default output directory. When set and
// --out is absent, output goes to <dir>/<command>.<json|csv>.
inline constexpr const char* kOutDirEnv = "BRENNAN_OUT_DIR";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brennan::cli
