#include "thermoflow/mms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace thermoflow {

namespace {

using std::numbers::pi;

// X(s) = sin^2(pi s) and its derivatives.
struct Sin2 {
  double v, d1, d2, d3;
  explicit Sin2(double s)
      : v(std::pow(std::sin(pi * s), 2)),
        d1(pi * std::sin(2 * pi * s)),
        d2(2 * pi * pi * std::cos(2 * pi * s)),
        d3(-4 * pi * pi * pi * std::sin(2 * pi * s)) {}
};

// Viscosity mu(s) and mu'(s) with s = |D|^2 for the stress S = mu(|D|^2) D.
struct Viscosity {
  double alpha = 0.0, beta = 1.0, gamma = 0.0, r = 2.0;
  double mu(double s) const { return alpha + beta * std::pow(1.0 + gamma * s, (r - 2.0) / 2.0); }
  double dmu(double s) const {
    return beta * (r - 2.0) / 2.0 * gamma * std::pow(1.0 + gamma * s, (r - 4.0) / 2.0);
  }
};

// Velocity u = e^-t (X Y', -X' Y) from psi = X Y e^-t.
Vec2 flow_u(double t, const Vec2& p) {
  const Sin2 X(p.x()), Y(p.y());
  const double e = std::exp(-t);
  return {e * X.v * Y.d1, -e * X.d1 * Y.v};
}

Mat2 flow_grad(double t, const Vec2& p) {
  const Sin2 X(p.x()), Y(p.y());
  const double e = std::exp(-t);
  Mat2 g;
  g << e * X.d1 * Y.d1, e * X.v * Y.d2, -e * X.d2 * Y.v, -e * X.d1 * Y.d1;
  return g;
}

double flow_p(double t, const Vec2& p) {
  return std::cos(pi * p.x()) * std::cos(pi * p.y()) * std::exp(-t);
}

double flow_theta(double t, const Vec2& p) {
  return 2.0 + std::cos(pi * p.x()) * std::cos(pi * p.y()) * std::exp(-t);
}

// f = du/dt + (grad u) u - div(mu D) + grad p, with
//   div(mu D)_i = mu/2 Lap u_i + mu'(s) D_ij d_j s,   s = 2 D11^2 + 2 D12^2.
Vec2 flow_force(const Viscosity& visc, double t, const Vec2& p) {
  const Sin2 X(p.x()), Y(p.y());
  const double e = std::exp(-t);
  const Vec2 u = flow_u(t, p);
  const Mat2 G = flow_grad(t, p);
  const double d11 = e * X.d1 * Y.d1;
  const double d12 = 0.5 * e * (X.v * Y.d2 - X.d2 * Y.v);
  const double s = 2 * d11 * d11 + 2 * d12 * d12;
  const Vec2 lap(e * (X.d2 * Y.d1 + X.v * Y.d3), -e * (X.d3 * Y.v + X.d1 * Y.d2));
  const Vec2 grad_d11(e * X.d2 * Y.d1, e * X.d1 * Y.d2);
  const Vec2 grad_d12(0.5 * e * (X.d1 * Y.d2 - X.d3 * Y.v), 0.5 * e * (X.v * Y.d3 - X.d2 * Y.d1));
  const Vec2 grad_s = 4 * d11 * grad_d11 + 4 * d12 * grad_d12;
  Mat2 D;
  D << d11, d12, d12, -d11;
  const Vec2 div_s = 0.5 * visc.mu(s) * lap + visc.dmu(s) * (D * grad_s);
  const Vec2 grad_p(-pi * e * std::sin(pi * p.x()) * std::cos(pi * p.y()),
                    -pi * e * std::cos(pi * p.x()) * std::sin(pi * p.y()));
  return -u + G * u - div_s + grad_p;
}

// g = d theta/dt + u . grad theta - kappa Lap theta - mu(s) s.
double flow_heat(const Viscosity& visc, double kappa, double t, const Vec2& p) {
  const double e = std::exp(-t);
  const double cx = std::cos(pi * p.x()), cy = std::cos(pi * p.y());
  const double sx = std::sin(pi * p.x()), sy = std::sin(pi * p.y());
  const Vec2 grad_theta(-pi * e * sx * cy, -pi * e * cx * sy);
  const double lap_theta = -2 * pi * pi * e * cx * cy;
  const Mat2 G = flow_grad(t, p);
  const Mat2 D = 0.5 * (G + G.transpose());
  const double s = D.squaredNorm();
  return -e * cx * cy + flow_u(t, p).dot(grad_theta) - kappa * lap_theta - visc.mu(s) * s;
}

MmsCase flow_case(const std::string& name, const ConstitutiveModel& model, const Viscosity& visc,
                  double kappa) {
  MmsCase c;
  c.name = name;
  c.exact_u = flow_u;
  c.exact_grad_u = flow_grad;
  c.exact_p = flow_p;
  c.exact_theta = flow_theta;
  c.u0 = [](const Vec2& p) { return flow_u(0.0, p); };
  c.theta0 = [](const Vec2& p) { return flow_theta(0.0, p); };
  c.force = [visc](double t, const Vec2& p) { return flow_force(visc, t, p); };
  c.heat_source = [visc, kappa](double t, const Vec2& p) { return flow_heat(visc, kappa, t, p); };
  c.model = model;
  c.conductivity = ConductivityLaw::constant(kappa);
  return c;
}

}  // namespace

std::vector<std::string> mms_case_names() { return {"stokes_heat", "carreau_heat", "rest_state"}; }

MmsCase mms_case(const std::string& name) {
  if (name == "stokes_heat") {
    return flow_case(name, ConstitutiveModel::power_law(2.0, 1.0), Viscosity{0.0, 1.0, 0.0, 2.0}, 1.0);
  }
  if (name == "carreau_heat") {
    const auto model = ConstitutiveModel::carreau_yasuda(1.5, {0.5, 0.0}, {1.0, 0.0}, {1.0, 0.0});
    return flow_case(name, model, Viscosity{0.5, 1.0, 1.0, 1.5}, 1.0);
  }
  if (name == "rest_state") {
    MmsCase c;
    c.name = name;
    c.exact_u = [](double, const Vec2&) { return Vec2(Vec2::Zero()); };
    c.exact_grad_u = [](double, const Vec2&) { return Mat2(Mat2::Zero()); };
    c.exact_p = [](double, const Vec2&) { return 0.0; };
    c.exact_theta = [](double, const Vec2&) { return 1.0; };
    c.u0 = [](const Vec2&) { return Vec2(Vec2::Zero()); };
    c.theta0 = [](const Vec2&) { return 1.0; };
    c.model = ConstitutiveModel::power_law(2.0, 1.0);
    c.conductivity = ConductivityLaw::constant(1.0);
    return c;
  }
  throw ValidationError("unknown manufactured solution '" + name + "'");
}

std::vector<ConvergenceLevel> space_study_levels(int first_level, int count, double tau0) {
  std::vector<ConvergenceLevel> out;
  for (int i = 0; i < count; ++i) out.push_back({first_level + i, tau0 / std::pow(4.0, i)});
  return out;
}

std::vector<ConvergenceLevel> time_study_levels(int mesh_level, const std::vector<double>& taus) {
  std::vector<ConvergenceLevel> out;
  for (double tau : taus) out.push_back({mesh_level, tau});
  return out;
}

ConvergenceTable run_convergence(const MmsCase& mms, const std::vector<ConvergenceLevel>& levels,
                                 const ConvergenceOptions& options) {
  if (levels.size() < 3) throw ValidationError("a convergence study needs at least 3 levels");
  if (!mms.has_exact_solution()) throw ValidationError("scenario '" + mms.name + "' has no exact solution");
  ConvergenceTable table;
  table.case_name = mms.name;
  for (const auto& level : levels) {
    RunConfig cfg;
    cfg.mesh_level = level.mesh_level;
    cfg.T = options.T;
    cfg.tau = level.tau;
    cfg.picard_tol = options.picard_tol;
    cfg.picard_max = options.picard_max;
    cfg.scenario = mms.name;
    if (mms.model) cfg.model = *mms.model;
    Trajectory traj = [&] {
      try {
        return run(cfg, mms);
      } catch (const PicardDiverged& e) {
        std::ostringstream msg;
        msg << e.what() << " [level " << level.mesh_level << ", tau " << level.tau << "]";
        throw PicardDiverged(msg.str(), e.iterations(), e.last_residual());
      }
    }();
    const StepState& fin = traj.final_state();
    const double T = fin.t;
    ConvergenceRow row;
    row.mesh_level = level.mesh_level;
    row.h = fin.u.space().mesh().h_max();
    row.tau = level.tau;
    row.steps = cfg.num_steps();
    row.err_u_l2 = l2_error(fin.u, VectorFunction([&](const Vec2& x) { return mms.exact_u(T, x); }));
    row.err_du_l2 = sym_grad_error(fin.u, [&](const Vec2& x) { return mms.exact_grad_u(T, x); });
    row.err_theta_l2 = l2_error(fin.theta, ScalarFunction([&](const Vec2& x) { return mms.exact_theta(T, x); }));
    for (const auto& s : traj.states()) row.max_picard_iters = std::max(row.max_picard_iters, s.picard_iters);
    table.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const auto& a = table.rows[i];
    const auto& b = table.rows[i + 1];
    const double ratio = a.mesh_level != b.mesh_level ? a.h / b.h : a.tau / b.tau;
    auto order = [&](double ea, double eb) { return std::log(ea / eb) / std::log(ratio); };
    table.orders.push_back({order(a.err_u_l2, b.err_u_l2), order(a.err_du_l2, b.err_du_l2),
                            order(a.err_theta_l2, b.err_theta_l2)});
  }
  return table;
}

WsuResult run_wsu_experiment(const Scenario& base, double eps, const RunConfig& config) {
  if (!(eps >= 0.0)) throw ValidationError("perturbation amplitude must be nonnegative");
  config.validate();
  TimeStepper stepper(make_discretization(make_mesh(config)), config, base);
  const VectorFunction du = perturbation_velocity();
  VectorFunction pu0 = [&base, du, eps](const Vec2& x) {
    Vec2 v = eps * du(x);
    if (base.u0) v += base.u0(x);
    return v;
  };
  ScalarFunction ptheta0 = [&base, eps](const Vec2& x) {
    return base.theta0(x) + eps * std::cos(std::numbers::pi * x.x()) * std::cos(std::numbers::pi * x.y());
  };
  const StepState ref0 = stepper.initialize();
  StepState pert0 = [&] {
    try {
      return stepper.initialize(pu0, ptheta0);
    } catch (const ValidationError&) {
      throw ValidationError("perturbed initial temperature is not positive");
    }
  }();
  // Identical data must give a bit-identical run.
  if (eps == 0.0) pert0 = ref0;
  const Trajectory ref = run(stepper, config, ref0);
  const Trajectory pert = run(stepper, config, pert0);

  WsuResult out;
  out.min_density = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ref.states().size(); ++j) {
    const RelativeEnergy e = relative_energy(pert.states()[j], ref.states()[j]);
    out.times.push_back(ref.states()[j].t);
    out.relative_energy.push_back(e.value);
    out.min_density = std::min(out.min_density, e.min_density);
  }
  out.E0 = out.relative_energy.front();
  out.fit = gronwall_fit(out.times, out.relative_energy, out.E0);
  out.bound_holds = !out.fit.uniqueness_violation;
  for (std::size_t j = 0; j < out.times.size() && out.bound_holds; ++j) {
    const double bound = out.E0 * std::exp(out.fit.C_est * out.times[j]);
    if (out.relative_energy[j] > bound * (1.0 + 1e-12) + 1e-300) out.bound_holds = false;
  }
  return out;
}

}  // namespace thermoflow
