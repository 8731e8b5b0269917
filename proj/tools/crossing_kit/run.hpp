#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "crossing/error.hpp"

namespace crossing::kit {

enum ExitCode { kOk = 0, kVerdictFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct Overrides {
  std::optional<std::string> out;  ///< CSV path
  std::optional<int> jobs;
  unsigned long long seed = 1;
};

/// 0 quiet, 1 normal, 2 debug; read from CROSSING_KIT_LOG.
int log_level_from_env();

ExitCode exit_code_for(ErrorCode code);

/// Dispatches one run; the summary goes to `out`, diagnostics to `log`.
ExitCode run(Mode mode, RunConfig config, const Overrides& ov, std::ostream& out, std::ostream& log, int log_level);

}  // namespace crossing::kit
