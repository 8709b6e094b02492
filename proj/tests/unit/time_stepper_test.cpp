#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thermoflow/time_stepper.hpp"

using namespace thermoflow;

namespace {

RunConfig small_config(const std::string& scenario, double T, double tau) {
  RunConfig c;
  c.mesh_level = 2;
  c.scenario = scenario;
  c.T = T;
  c.tau = tau;
  c.picard_tol = 1e-11;
  return c;
}

}  // namespace

TEST(TimeStepper, TimeAverageOfSine) {
  const TimeVectorFunction f = [](double t, const Vec2& x) { return Vec2(std::sin(t), x.x()); };
  const Vec2 avg = time_average_force(f, 0.0, 0.1)(Vec2(0.3, 0.0));
  EXPECT_NEAR(avg.x(), (std::cos(0.0) - std::cos(0.1)) / 0.1, 1e-12);
  EXPECT_NEAR(avg.y(), 0.3, 1e-15);
  const TimeScalarFunction g = [](double t, const Vec2&) { return std::exp(t); };
  EXPECT_NEAR(time_average_source(g, 1.0, 1.2)(Vec2::Zero()), (std::exp(1.2) - std::exp(1.0)) / 0.2, 1e-10);
  // Absent loads stay absent.
  EXPECT_FALSE(time_average_force({}, 0.0, 1.0));
  EXPECT_FALSE(time_average_source({}, 0.0, 1.0));
  EXPECT_THROW(time_average_force(f, 1.0, 1.0), ValidationError);
}

TEST(TimeStepper, RestIsAFixedPoint) {
  const Trajectory tr = run(small_config("rest", 0.2, 0.1));
  ASSERT_EQ(tr.states().size(), 3u);
  for (const StepState& s : tr.states()) {
    EXPECT_EQ(norm(s.u, NormKind::LinfNodal), 0.0);
    EXPECT_NEAR(s.theta.coeffs().minCoeff(), 1.0, 1e-13);
    EXPECT_NEAR(s.theta.coeffs().maxCoeff(), 1.0, 1e-13);
  }
  EXPECT_EQ(tr.states()[1].picard_iters, 1);
  EXPECT_NEAR(tr.states()[2].t, 0.2, 1e-15);
}

TEST(TimeStepper, DecayRunSatisfiesDiscreteBalances) {
  RunConfig c = small_config("decay", 0.05, 0.01);
  c.model = ConstitutiveModel::power_law(1.5, 0.5);
  c.conductivity = ConductivityLaw::constant(0.1);
  c.mass_lumping = true;
  const Trajectory tr = run(c);
  ASSERT_EQ(tr.records().size(), 6u);
  for (std::size_t j = 1; j < tr.records().size(); ++j) {
    const DiagnosticsRecord& r = tr.records()[j];
    EXPECT_LT(std::abs(r.energy_residual), 1e-9) << j;
    EXPECT_LT(std::abs(r.internal_residual), 1e-9) << j;
    EXPECT_LE(r.total, tr.records()[j - 1].total + 1e-12) << j;
    EXPECT_LT(r.kinetic, tr.records()[j - 1].kinetic) << j;
    EXPECT_GE(r.min_theta, 1.0 - 1e-12) << j;
    EXPECT_GE(r.picard_iters, 1);
    EXPECT_LE(r.picard_residual, c.picard_tol);
  }
}

TEST(TimeStepper, PenaltyEntersTheEnergyIdentity) {
  RunConfig c = small_config("decay", 0.02, 0.01);
  c.penalty_k = 1.0;
  const Trajectory tr = run(c);
  EXPECT_GT(tr.records().back().penalty_dissipation, 0.0);
  EXPECT_LT(std::abs(tr.records().back().energy_residual), 1e-9);
}

TEST(TimeStepper, InterpolantsInTime) {
  const Trajectory tr = run(small_config("decay", 0.02, 0.01));
  ASSERT_EQ(tr.states().size(), 3u);
  EXPECT_EQ(&tr.piecewise_constant(0.0), &tr.states()[0]);
  EXPECT_EQ(&tr.piecewise_constant(0.004), &tr.states()[1]);
  EXPECT_EQ(&tr.piecewise_constant(0.01), &tr.states()[1]);
  EXPECT_EQ(&tr.piecewise_constant(0.0101), &tr.states()[2]);
  EXPECT_EQ(&tr.piecewise_constant(0.02), &tr.states()[2]);
  const Vector mid = 0.75 * tr.states()[1].u.coeffs() + 0.25 * tr.states()[2].u.coeffs();
  EXPECT_NEAR((tr.velocity_linear(0.0125).coeffs() - mid).norm(), 0.0, 1e-14);
  const Vector tmid = 0.5 * (tr.states()[0].theta.coeffs() + tr.states()[1].theta.coeffs());
  EXPECT_NEAR((tr.temperature_linear(0.005).coeffs() - tmid).norm(), 0.0, 1e-14);
  // Outside [0, T] the end states are held.
  EXPECT_EQ(&tr.piecewise_constant(0.03), &tr.states()[2]);
  EXPECT_EQ(&tr.piecewise_constant(-1.0), &tr.states()[0]);
}

TEST(TimeStepper, PicardReportsNonConvergence) {
  RunConfig c = small_config("decay", 0.01, 0.01);
  c.model = ConstitutiveModel::power_law(1.5, 1.0);
  c.picard_tol = 1e-15;
  c.picard_max = 1;
  try {
    run(c);
    FAIL() << "expected PicardDiverged";
  } catch (const PicardDiverged& e) {
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.last_residual(), 1e-15);
  }
}

TEST(TimeStepper, ConfigValidation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.num_steps(), 10);
  c.tau = 0.1 / 10.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = RunConfig{};
  c.model = ConstitutiveModel::power_law(1.5, 1.0);  // r' = 3, bound max(6, 5) = 6
  EXPECT_EQ(c.effective_r_star(), 7.0);
  c.r_star = 6.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c.r_star = 6.5;
  EXPECT_NO_THROW(c.validate());
  c = RunConfig{};
  c.damping = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = RunConfig{};
  c.picard_tol = -1.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(TimeStepper, NonPositiveInitialTemperatureIsRejected) {
  const auto d = tf_test::unit_disc(1);
  const RunConfig c = small_config("decay", 0.01, 0.01);
  const TimeStepper stepper(d, c, make_scenario("decay"));
  EXPECT_THROW(stepper.initialize(decay_velocity(), [](const Vec2& p) { return p.x() - 0.5; }), ValidationError);
}
