#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace wrc {

// Exit codes: 0 = property holds / artifact produced, 1 = property certified
// false (counterexample on stdout), 2 = inconclusive (budget), 64 = usage error.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

// Maps a result object's verdict/status field to the exit code, so human and
// machine channels cannot diverge.
int exit_for(const nlohmann::json& result);

// Runs one CLI invocation (args excludes argv[0]). Machine output goes to
// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wrc
