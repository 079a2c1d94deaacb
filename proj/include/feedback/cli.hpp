#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feedback {

/// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `feedback_bandit` subcommand. `args` excludes the program name.
/// Human-readable output and JSON results go to `out`, diagnostics to `err`.
/// Every artifact embeds the resolved configuration and its digest; worker
/// count never enters the configuration, so outputs do not depend on it.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace feedback
