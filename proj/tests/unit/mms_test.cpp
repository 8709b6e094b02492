#include <cmath>

#include <gtest/gtest.h>

#include "thermoflow/mms.hpp"

using namespace thermoflow;

namespace {

constexpr double kH = 1e-4;

Mat2 fd_gradient(const TimeVectorFunction& u, double t, const Vec2& x) {
  Mat2 g;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = kH;
    g.col(j) = (u(t, x + e) - u(t, x - e)) / (2 * kH);
  }
  return g;
}

Mat2 sym(const Mat2& g) { return 0.5 * (g + g.transpose()); }

// Strong residuals of the momentum and heat equations with every derivative
// taken by central differences of the exact fields.
Vec2 momentum_source(const MmsCase& c, double t, const Vec2& x) {
  const ConstitutiveModel& m = *c.model;
  const Vec2 u = c.exact_u(t, x);
  const Vec2 ut = (c.exact_u(t + kH, x) - c.exact_u(t - kH, x)) / (2 * kH);
  Vec2 div_s = Vec2::Zero();
  Vec2 grad_p;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = kH;
    const Mat2 sp = stress(m, sym(c.exact_grad_u(t, x + e)), c.exact_theta(t, x + e));
    const Mat2 sm = stress(m, sym(c.exact_grad_u(t, x - e)), c.exact_theta(t, x - e));
    div_s += (sp.col(j) - sm.col(j)) / (2 * kH);
    grad_p[j] = (c.exact_p(t, x + e) - c.exact_p(t, x - e)) / (2 * kH);
  }
  return ut + c.exact_grad_u(t, x) * u - div_s + grad_p;
}

double heat_source(const MmsCase& c, double t, const Vec2& x) {
  const double kappa = c.conductivity->c1;
  const double th_t = (c.exact_theta(t + kH, x) - c.exact_theta(t - kH, x)) / (2 * kH);
  Vec2 grad;
  double lap = 0.0;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = kH;
    const double p = c.exact_theta(t, x + e), q = c.exact_theta(t, x - e), o = c.exact_theta(t, x);
    grad[j] = (p - q) / (2 * kH);
    lap += (p - 2 * o + q) / (kH * kH);
  }
  const Mat2 D = sym(c.exact_grad_u(t, x));
  return th_t + c.exact_u(t, x).dot(grad) - kappa * lap - ddot(stress(*c.model, D, c.exact_theta(t, x)), D);
}

const Vec2 kSamples[] = {{0.13, 0.71}, {0.5, 0.5}, {0.92, 0.27}, {0.31, 0.05}, {0.66, 0.88}};

}  // namespace

TEST(Mms, CaseRegistry) {
  const auto names = mms_case_names();
  EXPECT_EQ(names.size(), 3u);
  for (const auto& n : names) EXPECT_TRUE(mms_case(n).has_exact_solution()) << n;
  EXPECT_THROW(mms_case("nonexistent"), ValidationError);
}

TEST(Mms, ExactVelocityIsSolenoidalWithZeroTrace) {
  for (const std::string name : {"stokes_heat", "carreau_heat"}) {
    const MmsCase c = mms_case(name);
    for (double t : {0.0, 0.4}) {
      for (const Vec2& x : kSamples) {
        const Mat2 fd = fd_gradient(c.exact_u, t, x);
        EXPECT_NEAR((fd - c.exact_grad_u(t, x)).norm(), 0.0, 1e-5) << name;
        EXPECT_NEAR(c.exact_grad_u(t, x).trace(), 0.0, 1e-12) << name;
      }
      for (double s : {0.0, 0.3, 0.77, 1.0}) {
        EXPECT_NEAR(c.exact_u(t, {s, 0.0}).norm(), 0.0, 1e-15);
        EXPECT_NEAR(c.exact_u(t, {s, 1.0}).norm(), 0.0, 1e-15);
        EXPECT_NEAR(c.exact_u(t, {0.0, s}).norm(), 0.0, 1e-15);
        EXPECT_NEAR(c.exact_u(t, {1.0, s}).norm(), 0.0, 1e-15);
      }
    }
    EXPECT_NEAR((c.u0({0.3, 0.6}) - c.exact_u(0.0, {0.3, 0.6})).norm(), 0.0, 1e-15);
    EXPECT_NEAR(c.theta0({0.3, 0.6}), c.exact_theta(0.0, {0.3, 0.6}), 1e-15);
  }
}

TEST(Mms, SourcesMatchFiniteDifferenceResiduals) {
  for (const std::string name : {"stokes_heat", "carreau_heat"}) {
    const MmsCase c = mms_case(name);
    ASSERT_TRUE(c.model && c.conductivity);
    for (double t : {0.0, 0.25, 0.9}) {
      for (const Vec2& x : kSamples) {
        const Vec2 f = momentum_source(c, t, x);
        EXPECT_NEAR((c.force(t, x) - f).norm(), 0.0, 1e-5 * (1.0 + f.norm())) << name << " t=" << t;
        const double g = heat_source(c, t, x);
        EXPECT_NEAR(c.heat_source(t, x), g, 1e-5 * (1.0 + std::abs(g))) << name << " t=" << t;
      }
    }
  }
}

TEST(Mms, RestStateHasNoSources) {
  const MmsCase c = mms_case("rest_state");
  for (const Vec2& x : kSamples) {
    const Vec2 f = c.force ? c.force(0.3, x) : Vec2::Zero();
    const double g = c.heat_source ? c.heat_source(0.3, x) : 0.0;
    EXPECT_EQ(f.norm(), 0.0);
    EXPECT_EQ(g, 0.0);
    EXPECT_EQ(c.exact_theta(0.3, x), 1.0);
  }
}

TEST(Mms, StudyLevels) {
  const auto s = space_study_levels(2, 3, 0.25);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[2].mesh_level, 4);
  EXPECT_DOUBLE_EQ(s[2].tau, 0.25 / 16);
  const auto t = time_study_levels(3, {0.1, 0.05});
  EXPECT_EQ(t[1].mesh_level, 3);
  EXPECT_EQ(t[1].tau, 0.05);
}

TEST(Mms, RestStateIsReproducedExactly) {
  ConvergenceOptions o;
  o.T = 0.25;
  const auto table = run_convergence(mms_case("rest_state"), space_study_levels(1, 3, 0.25), o);
  ASSERT_EQ(table.rows.size(), 3u);
  for (const auto& r : table.rows) {
    EXPECT_LT(r.err_u_l2, 1e-12);
    EXPECT_LT(r.err_du_l2, 1e-12);
    EXPECT_LT(r.err_theta_l2, 1e-12);
  }
  EXPECT_THROW(run_convergence(mms_case("rest_state"), space_study_levels(1, 2, 0.25), o), ValidationError);
}

TEST(Mms, StokesHeatErrorsDecreaseUnderRefinement) {
  ConvergenceOptions o;
  o.T = 1.0 / 32;
  const auto table = run_convergence(mms_case("stokes_heat"), space_study_levels(1, 3, 1.0 / 32), o);
  ASSERT_EQ(table.orders.size(), 2u);
  for (const auto& ord : table.orders) {
    for (double v : ord) EXPECT_GT(v, 1.0);
  }
}
