#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blobscan {

/// Exit codes: detect returns 0 (no findings) or 1 (findings); every
/// subcommand returns 2 on an operational error.
inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitError = 2;

/// `args` excludes the program name.
[[nodiscard]] int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace blobscan
