#pragma once

#include <vector>

#include "thermoflow/assembly.hpp"
#include "thermoflow/state.hpp"

namespace thermoflow {

/// Per-state scalar diagnostics. Residual fields refer to the step that
/// produced the state and are 0 for the initial state.
struct DiagnosticsRecord {
  double t = 0.0;
  double kinetic = 0.0;              // 1/2 ||u||^2
  double internal = 0.0;             // int theta
  double total = 0.0;
  double dissipation = 0.0;          // int S(Du, theta) : Du
  double penalty_dissipation = 0.0;  // (1/k) ||u||_{r*}^{r*}
  double entropy = 0.0;              // int log theta
  double entropy_production = 0.0;   // int kappa |grad theta|^2/theta^2 + S:Du/theta
  double min_theta = 0.0;
  double energy_residual = 0.0;      // relative
  double internal_residual = 0.0;    // relative
  int picard_iters = 0;
  double picard_residual = 0.0;
};

struct PhysicsParams {
  ConstitutiveModel model;
  ConductivityLaw conductivity;
  PenaltyParams penalty;
};

DiagnosticsRecord state_record(const StepState& state, const PhysicsParams& physics);

/// Terms of
///   1/2||u_j||^2 - 1/2||u_{j-1}||^2 + 1/2||u_j - u_{j-1}||^2
///   + tau int S_j : Du_j + (tau/k)||u_j||_{r*}^{r*} = tau <f_j, u_j>.
struct EnergyBalance {
  double kinetic_jump = 0.0;
  double increment = 0.0;
  double dissipation = 0.0;
  double penalty = 0.0;
  double work = 0.0;
  double residual = 0.0;  // lhs - rhs
  double scale = 0.0;     // largest term magnitude

  double relative() const { return scale > 0.0 ? residual / scale : 0.0; }
};

EnergyBalance energy_balance_residual(const StepState& prev, const StepState& cur, double tau,
                                      const VectorFunction& f_avg, const PhysicsParams& physics);

/// int theta_j - int theta_{j-1} - tau int S(Du_j, theta_j) : Du_j, together
/// with the largest term for scaling.
struct InternalBalance {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? residual / scale : 0.0; }
};

InternalBalance internal_energy_residual(const StepState& prev, const StepState& cur, double tau,
                                         const ScalarFunction& heat_avg,
                                         const PhysicsParams& physics);

/// Weak entropy inequality with S = log theta over the steps (a, b],
/// evaluated with backward differences. Positive: satisfied with margin.
double entropy_residual(const std::vector<StepState>& states, const DiscreteField& psi,
                        std::size_t a, std::size_t b, const PhysicsParams& physics);

struct RelativeEnergy {
  double value = 0.0;
  double min_density = 0.0;  // smallest integrand value at a quadrature point
};

/// int 1/2|u - u~|^2 + (theta - theta~) + theta~ (log theta~ - log theta)
RelativeEnergy relative_energy(const DiscreteField& u, const DiscreteField& theta,
                               const DiscreteField& ref_u, const DiscreteField& ref_theta);
RelativeEnergy relative_energy(const StepState& state, const StepState& reference);

struct GronwallFit {
  double C_est = 0.0;
  bool uniqueness_violation = false;  // E0 = 0 but some E_j > 0
};

/// Smallest C with E_j <= E0 exp(C t_j); points with t_j <= 0 are skipped.
GronwallFit gronwall_fit(const std::vector<double>& times, const std::vector<double>& values,
                         double E0);

double min_temperature(const StepState& state);

struct AprioriMonitors {
  double max_velocity_l2 = 0.0;       // max_j ||u_j||
  double velocity_w1r = 0.0;          // sum tau ||u_j||_{W^{1,r}}^r
  double stress_lr_prime = 0.0;       // sum tau ||S_j||_{r'}^{r'}
  double penalty = 0.0;               // (tau/k) sum ||u_j||_{r*}^{r*}
  double parabolic_embedding = 0.0;   // ||u||_{L^{2r}(Q)}
  double log_theta_l2_h1 = 0.0;       // ||log theta||_{L^2(0,T;W^{1,2})}
  double log_theta_linf_l2 = 0.0;     // max_j ||log theta_j||_2
  double log_theta_linf_l4 = 0.0;     // max_j ||log theta_j||_4
};

AprioriMonitors apriori_monitor(const std::vector<StepState>& states, const PhysicsParams& physics);

}  // namespace thermoflow
