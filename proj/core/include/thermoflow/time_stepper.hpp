#pragma once

#include <limits>
#include <string>
#include <vector>

#include "thermoflow/diagnostics.hpp"
#include "thermoflow/scenarios.hpp"

namespace thermoflow {

struct RunConfig {
  int mesh_level = 4;
  std::string mesh_file;  // overrides mesh_level when set
  ConstitutiveModel model = ConstitutiveModel::power_law(2.0, 1.0);
  ConductivityLaw conductivity = ConductivityLaw::constant(1.0);
  double T = 0.1;
  double tau = 0.01;
  double penalty_k = std::numeric_limits<double>::infinity();
  double r_star = std::numeric_limits<double>::quiet_NaN();  // NaN: max(2r', 5) + 1
  double picard_tol = 1e-8;
  int picard_max = 50;
  double damping = 1.0;
  bool mass_lumping = false;
  std::string scenario = "decay";

  int num_steps() const;
  double effective_r_star() const;
  PenaltyParams penalty() const { return {penalty_k, effective_r_star()}; }
  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// (1/(t1 - t0)) int_{t0}^{t1} f(t) dt by the 3-point Gauss rule.
VectorFunction time_average_force(const TimeVectorFunction& f, double t0, double t1);
ScalarFunction time_average_source(const TimeScalarFunction& g, double t0, double t1);

/// Backward Euler with a damped, decoupled Picard iteration per step:
/// momentum with lagged (u, theta), then temperature with the new velocity.
class TimeStepper {
 public:
  TimeStepper(Discretization disc, const RunConfig& config, Scenario scenario);

  const Discretization& discretization() const { return disc_; }
  const PhysicsParams& physics() const { return physics_; }
  const Scenario& scenario() const { return scenario_; }
  double tau() const { return config_.tau; }

  /// u(0): divergence-constrained L2 projection; theta(0): nodal interpolant.
  StepState initialize() const;
  StepState initialize(const VectorFunction& u0, const ScalarFunction& theta0) const;
  StepState step(const StepState& prev) const;

 private:
  Discretization disc_;
  RunConfig config_;
  Scenario scenario_;
  PhysicsParams physics_;
};

class Trajectory {
 public:
  Trajectory(double tau, std::vector<StepState> states, std::vector<DiagnosticsRecord> records);

  double tau() const { return tau_; }
  const std::vector<StepState>& states() const { return states_; }
  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  const StepState& final_state() const { return states_.back(); }

  /// Piecewise constant interpolant: state j for t in (t_{j-1}, t_j].
  const StepState& piecewise_constant(double t) const;
  /// Piecewise linear interpolants of velocity and temperature.
  DiscreteField velocity_linear(double t) const;
  DiscreteField temperature_linear(double t) const;

 private:
  std::pair<std::size_t, double> locate(double t) const;

  double tau_;
  std::vector<StepState> states_;
  std::vector<DiagnosticsRecord> records_;
};

std::shared_ptr<const Mesh> make_mesh(const RunConfig& config);

/// Physics used for a run: the scenario's closures when it carries them,
/// otherwise the configuration's.
PhysicsParams resolve_physics(const RunConfig& config, const Scenario& scenario);

Trajectory run(const RunConfig& config, const Scenario& scenario);
Trajectory run(const TimeStepper& stepper, const RunConfig& config, const StepState& initial);
Trajectory run(const RunConfig& config);

}  // namespace thermoflow
