#include <gtest/gtest.h>

#include "fbvp/cli/config.hpp"

namespace fbvp::cli {
namespace {

const char* kCustom = R"j({
  "family": "custom", "mu": 1.5, "omega": 1.0, "R": 1.0,
  "constants": {"lambda": 0.05},
  "expressions": {"f": "lambda/sqrt(x)", "q": "lambda", "u": "1/sqrt(x)", "v": "0",
                  "gamma": "lambda/sqrt(r)"},
  "solver": {"grid_size": 201, "tol": 1e-6, "damping": 0.25, "m_schedule": [32, 64]},
  "output": {"dir": "results", "format": "json"}
})j";

TEST(Config, ExampleDefaults) {
  const ProblemConfig c = parse_config(R"j({"family": "example"})j");
  EXPECT_TRUE(c.is_example());
  EXPECT_EQ(std::get<ExampleFamily>(c.family).lambda, 0.009);
  EXPECT_EQ(c.mu, 1.9);
  EXPECT_EQ(c.omega, 2.0);
  EXPECT_EQ(c.grid_size, 801u);
  EXPECT_EQ(c.format, Format::kCsv);
}

TEST(Config, CustomRoundsTripIntoProblem) {
  const ProblemConfig c = parse_config(kCustom);
  EXPECT_FALSE(c.is_example());
  EXPECT_EQ(c.grid_size, 201u);
  EXPECT_EQ(c.m_schedule, (std::vector<int>{32, 64}));
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_EQ(c.format, Format::kJson);
  const ProblemSpec p = build_problem(c);
  EXPECT_DOUBLE_EQ(p.f(0.3, 4.0), 0.025);
  EXPECT_DOUBLE_EQ(p.q(0.3), 0.05);
  EXPECT_DOUBLE_EQ(p.gamma(4.0), 0.025);
  EXPECT_DOUBLE_EQ(p.q_reflected(0.2), 0.05);
  const SolveOptions o = solve_options(c);
  EXPECT_EQ(o.grid_size, 201u);
  EXPECT_EQ(o.damping, 0.25);
}

TEST(Config, ExpressionConstantsIncludeParameters) {
  const Constants k = expression_constants(parse_config(kCustom));
  EXPECT_EQ(k.at("lambda"), 0.05);
  EXPECT_EQ(k.at("mu"), 1.5);
  EXPECT_EQ(k.at("omega"), 1.0);
  EXPECT_EQ(k.at("R"), 1.0);
}

class Rejected : public ::testing::TestWithParam<std::string> {};

TEST_P(Rejected, RaisesConfigError) { EXPECT_THROW(parse_config(GetParam()), ConfigError); }

INSTANTIATE_TEST_SUITE_P(
    Config, Rejected,
    ::testing::Values(
        "not json", "[]", R"j({})j", R"j({"family": "other"})j", R"j({"family": "example", "extra": 1})j",
        R"j({"family": "example", "lambda": "big"})j", R"j({"family": "example", "lambda": -1})j",
        R"j({"family": "example", "mu": 1.5})j", R"j({"family": "example", "R": 0})j",
        R"j({"family": "example", "solver": {"grid_size": 4}})j",
        R"j({"family": "example", "solver": {"grid_size": 2.5}})j",
        R"j({"family": "example", "solver": {"damping": 0}})j",
        R"j({"family": "example", "solver": {"m_schedule": [8, 4]}})j",
        R"j({"family": "example", "solver": {"steps": 3}})j",
        R"j({"family": "example", "output": {"format": "xml"}})j",
        R"j({"family": "example", "expressions": {}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "expressions": {"f": "1", "q": "1", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1, "expressions": {"f": "2**x", "q": "1", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1, "expressions": {"f": "1", "q": "x", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1, "expressions": {"f": "lambda", "q": "1", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1, "lambda": 2, "expressions": {"f": "1", "q": "1", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 3, "omega": 1, "R": 1, "expressions": {"f": "1", "q": "1", "u": "1", "v": "0", "gamma": "1"}})j",
        R"j({"family": "custom", "mu": 1.5, "omega": 1, "R": 1, "expressions": {"f": "1", "q": "1", "u": "1", "v": "0"}})j"));

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError); }

}  // namespace
}  // namespace fbvp::cli
