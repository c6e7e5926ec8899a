#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fbvp/cli/config.hpp"
#include "fbvp/cli/output.hpp"
#include "fbvp/conditions.hpp"
#include "fbvp/solver.hpp"

namespace fbvp::cli {

enum class Command { kSolve, kCheck, kGreen, kMl, kExample };

enum ExitStatus : int {
  kCertified = 0,
  kCertificationFailed = 1,
  kConfigError = 2,
  kNumericFailure = 3,
};

/// Command-line overrides; unset fields keep the config (or default) value.
struct Flags {
  std::optional<std::string> config;
  std::optional<double> lambda, R, mu, nu, omega, x, tol;
  std::optional<std::size_t> nodes;
  std::optional<std::string> out;
  std::optional<Format> format;
};

/// Config from --config (or the built-in example family) with flags applied.
ProblemConfig resolve_config(const Flags& flags);

Json report_json(const SolveReport& report, const ProblemConfig& config);
Json report_json(const ConditionReport& report, const ProblemConfig& config);

/// Runs one command, writing artifacts under the output directory and a
/// summary to out. Errors are reported on err and mapped to ExitStatus.
int run(Command command, const Flags& flags, std::ostream& out, std::ostream& err);

}  // namespace fbvp::cli
