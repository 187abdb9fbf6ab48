#pragma once

// graver-forge command line: analyze, sparsify, generate, validate.
//
// Exit codes: 0 success, 1 usage or parse error, 2 NotEquivalent verdict,
// 3 budget exceeded, 4 validation failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace forge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotEquivalent = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitValidation = 4;

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forge
