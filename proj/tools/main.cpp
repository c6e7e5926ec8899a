#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "fbvp/cli/commands.hpp"

using fbvp::cli::Command;

int main(int argc, char** argv) {
  CLI::App app{"Singular Caputo fractional boundary value problems", "fbvp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fbvp 0.1.0");

  fbvp::cli::Flags flags;
  const std::map<std::string, fbvp::cli::Format> formats{{"csv", fbvp::cli::Format::kCsv},
                                                         {"json", fbvp::cli::Format::kJson}};
  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"solve", "solve the problem and certify the solution", Command::kSolve},
      {"check", "check the solvability hypotheses", Command::kCheck},
      {"green", "tabulate the Green's function", Command::kGreen},
      {"ml", "evaluate E_{mu,nu}(x)", Command::kMl},
      {"example", "reproduce the constants of the built-in family", Command::kExample},
  };
  Command selected = Command::kSolve;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&selected, c = s.command] { selected = c; });
    sub->add_option("--config", flags.config, "problem config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--lambda", flags.lambda, "lambda of the built-in family");
    sub->add_option("--R", flags.R, "a-priori bound R");
    sub->add_option("--mu", flags.mu, "fractional order mu");
    sub->add_option("--nu", flags.nu, "second Mittag-Leffler index (ml)");
    sub->add_option("--omega", flags.omega, "spectral shift omega");
    sub->add_option("--x", flags.x, "argument (ml)");
    sub->add_option("--nodes", flags.nodes, "grid nodes (solve) or points per axis (green)");
    sub->add_option("--tol", flags.tol, "certification tolerance");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--format", flags.format, "table format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fbvp::cli::kConfigError;
  }
  return fbvp::cli::run(selected, flags, std::cout, std::cerr);
}
