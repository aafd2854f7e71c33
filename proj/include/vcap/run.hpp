#pragma once

#include <iosfwd>
#include <string>

#include "vcap/config.hpp"
#include "vcap/report.hpp"

namespace vcap {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitConfig = 2 };

/// Runs a validated configuration and builds its report. Throws on computation errors.
Report build_report(const RunConfig& cfg);

/// Builds the report and writes it to cfg.out (or `out`). Maps exceptions to exit codes,
/// printing the message to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: argument parsing, config loading, run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vcap
