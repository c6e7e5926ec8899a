#include "fbvp/cli/commands.hpp"

#include <cstdio>
#include <ostream>

#include "fbvp/green.hpp"
#include "fbvp/specfun.hpp"

namespace fbvp::cli {

namespace {

constexpr double kConstantTolerance = 1e-3;

std::string problem_name(const ProblemConfig& c) { return c.is_example() ? "example" : "custom"; }

Json problem_json(const ProblemConfig& c) {
  Json j;
  j["family"] = problem_name(c);
  j["mu"] = c.mu;
  j["omega"] = c.omega;
  j["R"] = c.R;
  if (const auto* ex = std::get_if<ExampleFamily>(&c.family)) j["lambda"] = ex->lambda;
  return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

int solve_cmd(const ProblemConfig& cfg, std::ostream& out) {
  const ProblemSpec problem = build_problem(cfg);
  const SolveReport report = solve(problem, solve_options(cfg));
  const GridFunction& x = *report.solution;

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& r = report.residual_profile[i];
    rows.push_back({format_double(x.node(i)), format_double(x[i]), format_double(report.lower_bound[i]),
                    r ? format_double(*r) : std::string()});
  }
  const std::filesystem::path dir(cfg.out_dir);
  write_file(dir / "solution.csv", to_csv({"t", "x", "lower_bound", "residual"}, rows));
  write_file(dir / "solve_report.json", dump_json(report_json(report, cfg)));

  out << "solve: " << (report.certified ? "certified" : "NOT certified") << " (m = "
      << report.steps.back().m << ", residual " << format_double(report.residual) << ")\n";
  for (const auto& v : report.violations()) out << "  violated " << v << "\n";
  return report.certified ? kCertified : kCertificationFailed;
}

int check_cmd(const ProblemConfig& cfg, std::ostream& out) {
  const ConditionReport report = check_A2(build_problem(cfg));
  write_file(std::filesystem::path(cfg.out_dir) / "condition_report.json",
             dump_json(report_json(report, cfg)));
  out << "check: " << (report.pass ? "pass" : "FAIL") << " (ratio " << format_double(report.a2_ratio)
      << ")\n";
  for (const auto& v : report.verdicts) {
    if (!v.passed) out << "  failed " << v.name << ": " << v.detail << "\n";
  }
  return report.pass ? kCertified : kCertificationFailed;
}

int green_cmd(const ProblemConfig& cfg, const Flags& flags, std::ostream& out) {
  const std::size_t n = flags.nodes.value_or(101);
  if (n < 2) throw ConfigError("--nodes must be at least 2 for green");
  const GreenFunction g(KernelParams(cfg.mu, cfg.omega));
  std::vector<CsvRow> rows;
  Json arr = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double tau = static_cast<double>(k) / static_cast<double>(n - 1);
      const double v = g(t, tau);
      if (cfg.format == Format::kCsv) {
        rows.push_back({format_double(t), format_double(tau), format_double(v)});
      } else {
        arr.push_back(Json{{"t", t}, {"tau", tau}, {"G", v}});
      }
    }
  }
  const std::filesystem::path dir(cfg.out_dir);
  if (cfg.format == Format::kCsv) {
    write_file(dir / "green.csv", to_csv({"t", "tau", "G"}, rows));
  } else {
    write_file(dir / "green.json", dump_json(arr));
  }
  out << "green: " << n << " x " << n << " grid, mu = " << format_double(cfg.mu)
      << ", omega = " << format_double(cfg.omega) << "\n";
  return kCertified;
}

int ml_cmd(const Flags& flags, std::ostream& out) {
  if (!flags.mu || !flags.nu || !flags.x) throw ConfigError("ml needs --mu, --nu and --x");
  std::optional<MLIndex> idx;
  try {
    idx.emplace(*flags.mu, *flags.nu);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(*flags.x >= 0.0 && *flags.x <= kMittagLefflerMaxArgument)) {
    throw ConfigError("--x must lie in [0, 100]");
  }
  out << format_double(mittag_leffler(*idx, *flags.x)) << "\n";
  return kCertified;
}

int example_cmd(const ProblemConfig& cfg, std::ostream& out) {
  const auto* ex = std::get_if<ExampleFamily>(&cfg.family);
  if (!ex) throw ConfigError("example needs the example family");
  const auto table = example_constants(ex->lambda, cfg.R);
  bool ok = true;
  std::vector<CsvRow> rows;
  Json arr = Json::array();
  for (const auto& c : table) {
    ok = ok && c.rel_dev < kConstantTolerance;
    rows.push_back({c.name, format_double(c.computed), format_double(c.published), format_double(c.rel_dev)});
    arr.push_back(Json{{"name", c.name}, {"computed", c.computed}, {"published", c.published},
                       {"rel_dev", c.rel_dev}});
  }
  const CsvRow header{"name", "computed", "published", "rel_dev"};
  const std::filesystem::path dir(cfg.out_dir);
  if (cfg.format == Format::kCsv) {
    write_file(dir / "example_constants.csv", to_csv(header, rows));
  } else {
    write_file(dir / "example_constants.json", dump_json(arr));
  }
  char line[160];
  std::snprintf(line, sizeof line, "%-32s %16s %12s %10s\n", "name", "computed", "published", "rel_dev");
  out << line;
  for (const auto& c : table) {
    std::snprintf(line, sizeof line, "%-32s %16.9f %12.6g %10.2e\n", c.name.c_str(), c.computed,
                  c.published, c.rel_dev);
    out << line;
  }
  return ok ? kCertified : kCertificationFailed;
}

}  // namespace

ProblemConfig resolve_config(const Flags& flags) {
  ProblemConfig cfg = flags.config ? load_config(*flags.config) : ProblemConfig{};
  if (flags.lambda) {
    if (auto* ex = std::get_if<ExampleFamily>(&cfg.family)) {
      ex->lambda = *flags.lambda;
    } else {
      std::get<CustomFamily>(cfg.family).constants["lambda"] = *flags.lambda;
    }
  }
  if (flags.R) cfg.R = *flags.R;
  if (flags.mu) cfg.mu = *flags.mu;
  if (flags.omega) cfg.omega = *flags.omega;
  if (flags.nodes) cfg.grid_size = *flags.nodes;
  if (flags.tol) cfg.tol = *flags.tol;
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.format) cfg.format = *flags.format;
  return cfg;
}

Json report_json(const SolveReport& report, const ProblemConfig& config) {
  Json j;
  j["problem"] = problem_json(config);
  j["grid_size"] = config.grid_size;
  j["tol"] = config.tol;
  j["certified"] = report.certified;
  j["epsilon"] = report.epsilon;
  j["gamma_R"] = report.gamma_R;
  j["gamma_R_eps"] = report.gamma_R_eps;
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    steps.push_back(Json{{"m", s.m},
                         {"iterations", s.iterations},
                         {"defect", s.defect},
                         {"damping", s.damping},
                         {"change", optional_json(s.change)}});
  }
  j["continuation"] = steps;
  j["residual"] = report.residual;
  j["residual_regularized"] = report.residual_regularized;
  j["boundary_value"] = report.boundary_value;
  j["neumann_quotients"] = report.neumann_quotients;
  j["adaptive_defect"] = optional_json(report.adaptive_defect);
  double stated_margin = std::numeric_limits<double>::infinity();
  if (report.solution) {
    for (std::size_t i = 0; i < report.stated_lower_bound.size(); ++i) {
      stated_margin = std::min(stated_margin, (*report.solution)[i] - report.stated_lower_bound[i]);
    }
    j["x_max"] = report.solution->sup_norm();
  }
  j["stated_lower_bound_margin"] = stated_margin;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"limit", c.limit},
                          {"detail", c.detail}});
  }
  j["checks"] = checks;
  return j;
}

Json report_json(const ConditionReport& report, const ProblemConfig& config) {
  Json j;
  j["problem"] = problem_json(config);
  j["pass"] = report.pass;
  j["int_q"] = report.int_q;
  Json probes = Json::array();
  for (const auto& p : report.int_qu) probes.push_back(Json{{"c", p.c}, {"value", p.value}});
  j["int_q_u"] = probes;
  j["gamma_R"] = report.gamma_R;
  j["a2_threshold"] = report.a2_threshold;
  j["chi_R"] = report.chi_R;
  j["ratio_factor"] = report.ratio_factor;
  j["ratio_convention"] = report.ratio_convention;
  j["a2_ratio"] = report.a2_ratio;
  j["epsilon_max"] = optional_json(report.epsilon_max);
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back(Json{{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  j["sampling"] = report.sampling;
  if (config.is_example()) {
    const LambdaWindow w = lambda_window(config.R);
    j["lambda_window"] = Json{{"lo", w.lo}, {"hi", w.hi}, {"hi_ratio", w.hi_ratio}, {"hi_threshold", w.hi_threshold}};
  }
  return j;
}

int run(Command command, const Flags& flags, std::ostream& out, std::ostream& err) {
  try {
    if (command == Command::kMl) return ml_cmd(flags, out);
    ProblemConfig cfg = resolve_config(flags);
    if (command == Command::kGreen) {
      if (!(cfg.mu > 1.0 && cfg.mu <= 2.0) || !(cfg.omega > 0.0)) {
        throw ConfigError("green needs mu in (1, 2] and omega > 0");
      }
      return green_cmd(cfg, flags, out);
    }
    cfg.validate();
    switch (command) {
      case Command::kSolve: return solve_cmd(cfg, out);
      case Command::kCheck: return check_cmd(cfg, out);
      case Command::kExample: return example_cmd(cfg, out);
      default: break;
    }
    return kNumericFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NoAdmissibleEpsilon& e) {
    err << "certification failed: " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace fbvp::cli
