#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dbe {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

// args excludes the program name. Reports go to out, diagnostics and
// progress to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dbe
