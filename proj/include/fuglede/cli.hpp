#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuglede {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fuglede
