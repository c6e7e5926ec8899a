#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fbvp/cli/expression.hpp"
#include "fbvp/errors.hpp"
#include "fbvp/problem.hpp"
#include "fbvp/solver.hpp"

namespace fbvp::cli {

/// Malformed or inconsistent configuration (exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExampleFamily {
  double lambda = 0.009;
};

struct CustomFamily {
  Constants constants;
  std::string f, q, u, v, gamma;
};

enum class Format { kCsv, kJson };

struct ProblemConfig {
  double mu = 1.9;
  double omega = 2.0;
  double R = 1.0;
  std::variant<ExampleFamily, CustomFamily> family = ExampleFamily{};

  std::size_t grid_size = 801;
  double tol = 1e-5;
  double damping = 0.5;
  std::vector<int> m_schedule;

  std::string out_dir = ".";
  Format format = Format::kCsv;

  bool is_example() const { return std::holds_alternative<ExampleFamily>(family); }
  /// Checks ranges, family consistency and that every expression parses.
  void validate() const;
};

/// Reads a JSON config. Unknown keys, wrong types and failed validation
/// raise ConfigError.
ProblemConfig load_config(const std::string& path);
ProblemConfig parse_config(const std::string& json_text);

/// The constants visible to custom expressions: the user's plus R, mu, omega.
Constants expression_constants(const ProblemConfig& config);

ProblemSpec build_problem(const ProblemConfig& config);
SolveOptions solve_options(const ProblemConfig& config);

}  // namespace fbvp::cli
