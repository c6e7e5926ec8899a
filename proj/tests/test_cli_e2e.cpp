#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fbvp_e2e_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(FBVP_BINARY) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string stdout_text() const { return slurp(dir_ / "stdout.txt"); }
  std::string out_flag(const std::string& sub = "out") const { return "--out " + (dir_ / sub).string(); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  static std::string config(const std::string& name) { return std::string(FBVP_CONFIG_DIR) + "/" + name; }

  fs::path dir_;
};

TEST_F(Cli, MittagLefflerValue) {
  EXPECT_EQ(run("ml --mu 1 --nu 1 --x 1"), 0);
  EXPECT_EQ(stdout_text(), "2.7182818284590451e+00\n");
  EXPECT_EQ(run("ml --mu 2 --nu 1 --x 4"), 0);
  EXPECT_EQ(stdout_text().substr(0, 11), "3.762195691");
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("ml --mu 1 --nu 1"), 2);
  EXPECT_EQ(run("ml --mu 0 --nu 1 --x 1"), 2);
  EXPECT_EQ(run("ml --mu 1 --nu 1 --x 101"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("solve --bogus 1"), 2);
  EXPECT_EQ(run("solve --config /nonexistent.json"), 2);
  EXPECT_EQ(run("check --format xml"), 2);
  EXPECT_EQ(run("solve --config " + write("bad.json", R"j({"family": "example", "colour": 1})j").string()), 2);
  EXPECT_EQ(run("solve --mu 1.5"), 2);
  EXPECT_EQ(run("green --nodes 1 " + out_flag()), 2);
}

TEST_F(Cli, ExampleTable) {
  ASSERT_EQ(run("example --lambda 0.009 --R 1 " + out_flag()), 0);
  const auto rows = lines(slurp(dir_ / "out" / "example_constants.csv"));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], "name,computed,published,rel_dev");
  const std::vector<std::string> published{"3.07853", "4.37043", "1.94308", "5.21001",
                                           "7.94329", "13.3352", "3.59596"};
  for (std::size_t k = 0; k < published.size(); ++k) {
    const auto cells = split(rows[k + 1]);
    ASSERT_EQ(cells.size(), 4u);
    EXPECT_DOUBLE_EQ(std::stod(cells[2]), std::stod(published[k]));
    EXPECT_LT(std::stod(cells[3]), 1e-3);
    EXPECT_NE(stdout_text().find(published[k]), std::string::npos) << published[k];
  }
  ASSERT_EQ(run("example --format json " + out_flag()), 0);
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "example_constants.json"));
  EXPECT_EQ(j.size(), 7u);
  EXPECT_EQ(j[0]["name"], "int_q_over_lambda");
}

TEST_F(Cli, SolveExampleCertifies) {
  ASSERT_EQ(run("solve --config " + config("example.json") + " " + out_flag()), 0);
  const auto rows = lines(slurp(dir_ / "out" / "solution.csv"));
  ASSERT_EQ(rows.size(), 802u);
  EXPECT_EQ(rows[0], "t,x,lower_bound,residual");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    ASSERT_EQ(cells.size(), 4u);
    const double x = std::stod(cells[1]);
    if (i + 1 < rows.size()) {
      EXPECT_GT(x, 0.0);
    } else {
      EXPECT_EQ(std::stod(cells[0]), 1.0);
      EXPECT_LE(std::abs(x), 1e-8);
      EXPECT_TRUE(cells[3].empty());
    }
  }
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "solve_report.json"));
  EXPECT_TRUE(report["certified"].get<bool>());
  EXPECT_EQ(report["problem"]["family"], "example");
}

TEST_F(Cli, ShortScheduleFailsCertification) {
  EXPECT_EQ(run("solve --config " + config("custom_example.json") + " " + out_flag()), 1);
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "solve_report.json"));
  EXPECT_FALSE(report["certified"].get<bool>());
  EXPECT_NE(stdout_text().find("violated continuation_final_change"), std::string::npos);
}

TEST_F(Cli, CheckVerdicts) {
  EXPECT_EQ(run("check --config " + config("example.json") + " " + out_flag()), 0);
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "condition_report.json"));
  EXPECT_TRUE(report["pass"].get<bool>());
  EXPECT_GT(report["lambda_window"]["hi"].get<double>(), 0.009);
  EXPECT_EQ(run("check --lambda 0.05 " + out_flag()), 1);
  EXPECT_EQ(run("check --config " + config("classical.json") + " " + out_flag()), 0);
}

TEST_F(Cli, NumericFailureExitsThree) {
  const auto cfg = write("fault.json", R"j({
    "family": "custom", "mu": 1.5, "omega": 1, "R": 1,
    "expressions": {"f": "log(x - 2)", "q": "0.1", "u": "1", "v": "0", "gamma": "0.1"},
    "solver": {"grid_size": 33, "m_schedule": [4, 8]}})j");
  EXPECT_EQ(run("solve --config " + cfg.string() + " " + out_flag()), 3);
}

TEST_F(Cli, GreenGridAndDeterminism) {
  ASSERT_EQ(run("green --nodes 11 " + out_flag("a")), 0);
  ASSERT_EQ(run("green --nodes 11 " + out_flag("b")), 0);
  const std::string a = slurp(dir_ / "a" / "green.csv");
  EXPECT_EQ(a, slurp(dir_ / "b" / "green.csv"));
  const auto rows = lines(a);
  ASSERT_EQ(rows.size(), 122u);
  EXPECT_EQ(rows[0], "t,tau,G");
  EXPECT_EQ(rows[1], "0.0000000000000000e+00,0.0000000000000000e+00,6.5181821780044558e-01");
  ASSERT_EQ(run("green --nodes 5 --mu 1.5 --omega 0.5 --format json " + out_flag()), 0);
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "green.json"));
  EXPECT_EQ(j.size(), 25u);
}

TEST_F(Cli, ReportsAreBitIdentical) {
  const std::string args = "solve --config " + config("custom_example.json") + " --nodes 101 ";
  run(args + out_flag("a"));
  run(args + out_flag("b"));
  EXPECT_EQ(slurp(dir_ / "a" / "solution.csv"), slurp(dir_ / "b" / "solution.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "solve_report.json"), slurp(dir_ / "b" / "solve_report.json"));
  EXPECT_FALSE(slurp(dir_ / "a" / "solve_report.json").empty());
}

}  // namespace
