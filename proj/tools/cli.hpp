#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apsel::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUncalibrated = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apsel::cli
