#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kempner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitTruncated = 2;
inline constexpr int kExitMismatch = 3;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kempner::cli
