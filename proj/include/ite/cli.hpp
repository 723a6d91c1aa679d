#pragma once

#include <ostream>

namespace ite {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// Command-line entry point.  Results go to the --out files (or `out` when no
// file is given); errors go to `err` as a one-line JSON object.
// Exit codes: 0 Pass or Report-only, 1 Fail, 2 invalid configuration,
// 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ite
