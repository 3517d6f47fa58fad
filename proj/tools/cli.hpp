#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace treecount::cli {

enum ExitCode : int { ok = 0, usage_error = 1, mismatch = 2, budget_exhausted = 3 };

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

/// "a..b" or a single value "a".
Range parse_range(const std::string& text);

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treecount::cli
