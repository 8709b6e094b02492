#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "thermoflow/cli.hpp"

using namespace thermoflow;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "thermoflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("thermoflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write_config(const std::string& body) {
    const auto path = dir_ / "case.cfg";
    std::ofstream(path) << body << "output.dir = " << (dir_ / "out").string() << "\n";
    return path.string();
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrorsExitWithOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"run"}).code, 1);
  EXPECT_EQ(invoke({"infsup", "--levels", "9"}).code, 1);
  EXPECT_EQ(invoke({"mms", "stokes_heat", "--levels", "2"}).code, 1);
  EXPECT_EQ(invoke({"mms", "no_such_case"}).code, 1);
}

TEST_F(CliTest, MissingOrInvalidConfigExitsWithOne) {
  const Result r = invoke({"run", (dir_ / "absent.cfg").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("absent.cfg"), std::string::npos);
  EXPECT_EQ(invoke({"run", write_config("mesh.levle = 2\n")}).code, 1);
}

TEST_F(CliTest, RunWritesDiagnosticsAndFields) {
  const std::string cfg = write_config("mesh.level = 1\ntime.T = 0.02\ntime.tau = 0.01\noutput.vtk = true\n");
  const Result r = invoke({"run", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "diagnostics.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "fields_0000.vtk"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "fields_0002.vtk"));
}

TEST_F(CliTest, SolverFailureExitsWithTwo) {
  const std::string cfg = write_config(
      "mesh.level = 1\ntime.T = 0.01\ntime.tau = 0.01\nmodel.r = 1.5\n"
      "solver.picard_tol = 1e-16\nsolver.picard_max = 1\n");
  const Result r = invoke({"run", cfg});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Picard"), std::string::npos) << r.err;
}

TEST_F(CliTest, InfSupPrintsOneLinePerLevel) {
  const Result r = invoke({"infsup", "--levels", "2", "--first", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("level 1 (2x2): beta_h = "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("level 2 (4x4): beta_h = "), std::string::npos) << r.out;
}

TEST_F(CliTest, MmsRestStateTable) {
  const Result r = invoke({"mms", "rest_state", "--levels", "3", "--first", "1", "--tau0", "0.25", "--T", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("case rest_state"), std::string::npos);
  EXPECT_NE(r.out.find("observed orders"), std::string::npos);
}

TEST_F(CliTest, CheckModelAndWsu) {
  const std::string cfg = write_config("mesh.level = 1\ntime.T = 0.02\ntime.tau = 0.01\ncheck.samples = 200\n");
  const Result c = invoke({"check-model", cfg});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("seed 12345"), std::string::npos);
  EXPECT_NE(c.out.find("monotonicity"), std::string::npos);
  const Result w = invoke({"wsu", cfg, "--eps", "0.01"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_NE(w.out.find("C_est = "), std::string::npos);
  EXPECT_NE(w.out.find("holds"), std::string::npos);
}
