#pragma once

#include <iosfwd>

namespace lcap::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

/// Entry point shared by the executable and the tests. Writes the artifact
/// to `out` (or --out) and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcap::cli
