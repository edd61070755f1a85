#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gasald::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitEstimation = 3;

// Entry point of the command-line tool. Reports go to `out`, diagnostics
// and usage text to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gasald::io
