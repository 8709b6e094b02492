#include <sstream>

#include <gtest/gtest.h>

#include "thermoflow/config.hpp"

using namespace thermoflow;

namespace {
Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}
}  // namespace

TEST(Config, EmptyInputGivesDefaults) {
  const Config c = parse("# nothing here\n\n");
  EXPECT_EQ(c.run.mesh_level, 4);
  EXPECT_EQ(c.run.scenario, "decay");
  EXPECT_EQ(c.run.model.kind, ModelKind::PowerLaw);
  EXPECT_EQ(c.run.model.r, 2.0);
  EXPECT_TRUE(std::isinf(c.run.penalty_k));
  EXPECT_EQ(c.output_dir, "output");
  EXPECT_TRUE(c.write_csv);
  EXPECT_FALSE(c.write_vtk);
  EXPECT_EQ(c.check_seed, 12345u);
}

TEST(Config, ParsesEverySection) {
  const Config c = parse(
      "mesh.level = 3\n"
      "model.kind = carreau_yasuda   # trailing comment\n"
      "model.r = 1.5\n"
      "model.alpha = 0.5\n"
      "model.alpha_amp = 0.25\n"
      "conductivity.kind = bounded_affine_sqrt\n"
      "conductivity.c1 = 0.2\n"
      "conductivity.c2 = 0.3\n"
      "conductivity.cap = 4\n"
      "time.T = 0.5\n"
      "time.tau = 0.05\n"
      "penalty.k = 100\n"
      "penalty.r_star = 8\n"
      "solver.picard_tol = 1e-9\n"
      "solver.picard_max = 20\n"
      "solver.damping = 0.5\n"
      "solver.mass_lumping = true\n"
      "scenario.name = decay_hot\n"
      "output.dir = out/x\n"
      "output.vtk = on\n"
      "check.samples = 50\n"
      "check.seed = 7\n");
  EXPECT_EQ(c.run.mesh_level, 3);
  EXPECT_EQ(c.run.model.kind, ModelKind::CarreauYasuda);
  EXPECT_EQ(c.run.model.r, 1.5);
  EXPECT_EQ(c.run.conductivity.kind, ConductivityKind::BoundedAffineSqrt);
  EXPECT_EQ(c.run.conductivity.cap, 4.0);
  EXPECT_EQ(c.run.num_steps(), 10);
  EXPECT_EQ(c.run.penalty_k, 100.0);
  EXPECT_EQ(c.run.effective_r_star(), 8.0);
  EXPECT_EQ(c.run.picard_max, 20);
  EXPECT_TRUE(c.run.mass_lumping);
  EXPECT_EQ(c.run.scenario, "decay_hot");
  EXPECT_EQ(c.output_dir, "out/x");
  EXPECT_TRUE(c.write_vtk);
  EXPECT_EQ(c.check_samples, 50);
  EXPECT_EQ(c.check_seed, 7u);
}

TEST(Config, RejectsLowPenaltyExponent) {
  // r = 1.5: r' = 3, so r_star must exceed max(6, 5) = 6.
  const std::string msg = error_of("model.r = 1.5\npenalty.r_star = 4\n");
  EXPECT_NE(msg.find("r_star"), std::string::npos) << msg;
}

TEST(Config, RejectsNonIntegerStepCount) {
  const std::string msg = error_of("time.T = 1.05\ntime.tau = 0.1\n");
  EXPECT_NE(msg.find("time.T / time.tau"), std::string::npos) << msg;
}

TEST(Config, ReportsUnknownKeysWithLocation) {
  EXPECT_EQ(error_of("mesh.level = 2\nmesh.levle = 3\n"), "test.cfg:2: unknown key 'mesh.levle'");
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_FALSE(error_of("mesh.level 3\n").empty());
  EXPECT_FALSE(error_of("mesh.level =\n").empty());
  EXPECT_FALSE(error_of("mesh.level = three\n").empty());
  EXPECT_FALSE(error_of("time.tau = 0.1x\n").empty());
  EXPECT_FALSE(error_of("solver.mass_lumping = maybe\n").empty());
  EXPECT_FALSE(error_of("model.kind = bingham\n").empty());
  EXPECT_FALSE(error_of("scenario.name = nowhere\n").empty());
  EXPECT_FALSE(error_of("solver.damping = 1.5\n").empty());
  EXPECT_FALSE(error_of("check.samples = 0\n").empty());
}

TEST(Config, MissingFileIsAValidationError) {
  EXPECT_THROW(parse_config("/nonexistent/dir/none.cfg"), ValidationError);
}
