#include "thermoflow/time_stepper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "thermoflow/linear_solver.hpp"

namespace thermoflow {

Discretization make_discretization(std::shared_ptr<const Mesh> mesh) {
  Discretization d;
  d.mesh = mesh;
  d.velocity = build_space(mesh, Family::P2Vector);
  d.pressure = build_space(mesh, Family::P1Scalar);
  d.temperature = d.pressure;
  return d;
}

int RunConfig::num_steps() const { return static_cast<int>(std::llround(T / tau)); }

double RunConfig::effective_r_star() const {
  if (!std::isnan(r_star)) return r_star;
  return std::max(2.0 * model.r_prime(), 5.0) + 1.0;
}

void RunConfig::validate() const {
  model.validate();
  conductivity.validate();
  if (!(tau > 0.0)) throw ValidationError("time.tau must be positive");
  if (!(T > 0.0)) throw ValidationError("time.T must be positive");
  const double ratio = T / tau;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
    std::ostringstream msg;
    msg << "time.T / time.tau must be a positive integer (got " << ratio << ")";
    throw ValidationError(msg.str());
  }
  if (!(penalty_k >= 1.0)) throw ValidationError("penalty.k must be >= 1 or inf");
  const double bound = std::max(2.0 * model.r_prime(), 5.0);
  if (!(effective_r_star() > bound)) {
    std::ostringstream msg;
    msg << "r_star must exceed max{2r′,5} = " << bound;
    throw ValidationError(msg.str());
  }
  if (!(picard_tol > 0.0 && picard_tol < 1.0)) throw ValidationError("solver.picard_tol must lie in (0,1)");
  if (picard_max < 1) throw ValidationError("solver.picard_max must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw ValidationError("solver.damping must lie in (0,1]");
  if (mesh_file.empty() && (mesh_level < 0 || mesh_level > 10)) {
    throw ValidationError("mesh.level must lie in [0,10]");
  }
}

namespace {

constexpr std::array<double, 3> kGaussNodes = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> kGaussWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

double relative_residual(const AssembledSystem& sys, const Vector& x) {
  const Vector ax = sys.matrix * x;
  const double scale = std::max(sys.rhs.norm(), ax.norm());
  if (scale == 0.0) return 0.0;
  return (ax - sys.rhs).norm() / scale;
}

}  // namespace

VectorFunction time_average_force(const TimeVectorFunction& f, double t0, double t1) {
  if (!(t1 > t0)) throw ValidationError("time average needs t1 > t0");
  if (!f) return {};
  return [f, t0, t1](const Vec2& x) {
    Vec2 sum = Vec2::Zero();
    for (int i = 0; i < 3; ++i) {
      sum += 0.5 * kGaussWeights[i] * f(0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kGaussNodes[i], x);
    }
    return Vec2(sum);
  };
}

ScalarFunction time_average_source(const TimeScalarFunction& g, double t0, double t1) {
  if (!(t1 > t0)) throw ValidationError("time average needs t1 > t0");
  if (!g) return {};
  return [g, t0, t1](const Vec2& x) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      sum += 0.5 * kGaussWeights[i] * g(0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kGaussNodes[i], x);
    }
    return sum;
  };
}

PhysicsParams resolve_physics(const RunConfig& config, const Scenario& scenario) {
  PhysicsParams p;
  p.model = scenario.model.value_or(config.model);
  p.conductivity = scenario.conductivity.value_or(config.conductivity);
  p.penalty = config.penalty();
  return p;
}

TimeStepper::TimeStepper(Discretization disc, const RunConfig& config, Scenario scenario)
    : disc_(std::move(disc)), config_(config), scenario_(std::move(scenario)) {
  config_.validate();
  physics_ = resolve_physics(config_, scenario_);
}

StepState TimeStepper::initialize() const { return initialize(scenario_.u0, scenario_.theta0); }

StepState TimeStepper::initialize(const VectorFunction& u0, const ScalarFunction& theta0) const {
  DiscreteField u = u0 ? project_divergence_free(disc_.velocity, disc_.pressure, u0)
                       : DiscreteField(disc_.velocity);
  if (!theta0) throw ValidationError("scenario has no initial temperature");
  DiscreteField theta = interpolate(disc_.temperature, theta0);
  if (!(theta.coeffs().minCoeff() > 0.0)) {
    throw ValidationError("initial temperature must be positive");
  }
  return StepState{0.0, std::move(u), DiscreteField(disc_.pressure), std::move(theta), 0, 0.0};
}

StepState TimeStepper::step(const StepState& prev) const {
  const double tau = config_.tau;
  const double t = prev.t + tau;
  const VectorFunction f_avg = time_average_force(scenario_.force, prev.t, t);
  const ScalarFunction g_avg = time_average_source(scenario_.heat_source, prev.t, t);
  const int nu = disc_.velocity->dof_count();
  const int np = disc_.pressure->dof_count();

  auto momentum = [&](const DiscreteField& u_lag, const DiscreteField& th_lag) {
    MomentumInputs in;
    in.u_prev = &prev.u;
    in.u_lag = &u_lag;
    in.theta_lag = &th_lag;
    in.pressure_space = disc_.pressure;
    in.tau = tau;
    in.force = f_avg;
    in.penalty = physics_.penalty;
    in.model = &physics_.model;
    return assemble_momentum_system(in);
  };
  auto temperature = [&](const DiscreteField& u_new, const DiscreteField& th_lag) {
    TemperatureInputs in;
    in.theta_prev = &prev.theta;
    in.u_new = &u_new;
    in.theta_lag = &th_lag;
    in.tau = tau;
    in.law = &physics_.conductivity;
    in.model = &physics_.model;
    in.lumped_mass = config_.mass_lumping;
    in.heat_source = g_avg;
    return assemble_temperature_system(in);
  };

  DiscreteField u = prev.u;
  DiscreteField theta = prev.theta;
  Vector x(nu + np);
  double omega = config_.damping;
  double last = std::numeric_limits<double>::infinity();
  AssembledSystem msys = momentum(u, theta);
  SparseDirectSolver momentum_solver;
  SparseDirectSolver temperature_solver;
  for (int it = 1; it <= config_.picard_max; ++it) {
    momentum_solver.factorize(msys.matrix);
    const Vector xm = momentum_solver.solve(msys.rhs);
    u.coeffs() = (1.0 - omega) * u.coeffs() + omega * xm.head(nu);
    x.head(nu) = u.coeffs();
    x.tail(np) = xm.tail(np);

    const AssembledSystem tsys = temperature(u, theta);
    temperature_solver.factorize(tsys.matrix);
    theta.coeffs() = (1.0 - omega) * theta.coeffs() + omega * temperature_solver.solve(tsys.rhs);
    if (!(theta.coeffs().minCoeff() > 0.0)) {
      throw SolverError("temperature lost positivity at t = " + std::to_string(t));
    }

    msys = momentum(u, theta);
    const double res = std::max(relative_residual(msys, x), relative_residual(temperature(u, theta), theta.coeffs()));
    if (res <= config_.picard_tol) {
      auto [uf, pf] = split_momentum_solution(x, disc_.velocity, disc_.pressure);
      return StepState{t, std::move(uf), std::move(pf), std::move(theta), it, res};
    }
    if (res > last && omega > 0.125) omega *= 0.5;
    last = res;
  }
  std::ostringstream msg;
  msg << "Picard iteration did not reach tolerance " << config_.picard_tol << " within "
      << config_.picard_max << " iterations at t = " << t << " (last residual " << last << ")";
  throw PicardDiverged(msg.str(), config_.picard_max, last);
}

// ---------------------------------------------------------------------------

Trajectory::Trajectory(double tau, std::vector<StepState> states, std::vector<DiagnosticsRecord> records)
    : tau_(tau), states_(std::move(states)), records_(std::move(records)) {
  if (states_.empty()) throw ValidationError("trajectory needs at least the initial state");
}

std::pair<std::size_t, double> Trajectory::locate(double t) const {
  const double t0 = states_.front().t;
  const double s = (t - t0) / tau_;
  const auto last = static_cast<double>(states_.size() - 1);
  if (s <= 0.0) return {0, 1.0};
  if (s >= last) return {states_.size() - 1, 1.0};
  const double j = std::ceil(s - 1e-12);
  return {static_cast<std::size_t>(j), s - (j - 1.0)};
}

const StepState& Trajectory::piecewise_constant(double t) const { return states_[locate(t).first]; }

DiscreteField Trajectory::velocity_linear(double t) const {
  const auto [j, lambda] = locate(t);
  if (j == 0) return states_[0].u;
  return DiscreteField(states_[j].u.space_ptr(),
                       (1.0 - lambda) * states_[j - 1].u.coeffs() + lambda * states_[j].u.coeffs());
}

DiscreteField Trajectory::temperature_linear(double t) const {
  const auto [j, lambda] = locate(t);
  if (j == 0) return states_[0].theta;
  return DiscreteField(states_[j].theta.space_ptr(),
                       (1.0 - lambda) * states_[j - 1].theta.coeffs() + lambda * states_[j].theta.coeffs());
}

std::shared_ptr<const Mesh> make_mesh(const RunConfig& config) {
  if (!config.mesh_file.empty()) return std::make_shared<const Mesh>(load_mesh(config.mesh_file));
  return std::make_shared<const Mesh>(unit_square_mesh(config.mesh_level));
}

Trajectory run(const TimeStepper& stepper, const RunConfig& config, const StepState& initial) {
  const PhysicsParams& physics = stepper.physics();
  const Scenario& scenario = stepper.scenario();
  std::vector<StepState> states;
  std::vector<DiagnosticsRecord> records;
  const int n = config.num_steps();
  states.reserve(static_cast<std::size_t>(n) + 1);
  states.push_back(initial);
  records.push_back(state_record(initial, physics));
  for (int j = 1; j <= n; ++j) {
    StepState next = stepper.step(states.back());
    // Land exactly on the grid t_j = j tau.
    next.t = initial.t + j * config.tau;
    const StepState& prev = states.back();
    DiagnosticsRecord rec = state_record(next, physics);
    rec.energy_residual =
        energy_balance_residual(prev, next, config.tau, time_average_force(scenario.force, prev.t, next.t), physics)
            .relative();
    rec.internal_residual =
        internal_energy_residual(prev, next, config.tau,
                                 time_average_source(scenario.heat_source, prev.t, next.t), physics)
            .relative();
    states.push_back(std::move(next));
    records.push_back(rec);
  }
  return Trajectory(config.tau, std::move(states), std::move(records));
}

Trajectory run(const RunConfig& config, const Scenario& scenario) {
  config.validate();
  TimeStepper stepper(make_discretization(make_mesh(config)), config, scenario);
  return run(stepper, config, stepper.initialize());
}

Trajectory run(const RunConfig& config) { return run(config, make_scenario(config.scenario)); }

}  // namespace thermoflow
