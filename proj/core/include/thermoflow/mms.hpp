#pragma once

#include <array>
#include <string>
#include <vector>

#include "thermoflow/time_stepper.hpp"

namespace thermoflow {

using MmsCase = Scenario;

/// "stokes_heat": psi = sin^2(pi x) sin^2(pi y) e^-t, u = (psi_y, -psi_x),
///   p = cos(pi x) cos(pi y) e^-t, theta = 2 + cos(pi x) cos(pi y) e^-t,
///   Newtonian (power law r = 2, K = 1), kappa = 1.
/// "carreau_heat": same fields, Carreau-Yasuda r = 1.5 with constant
///   coefficients alpha = 0.5, beta = 1, Gamma = 1, kappa = 1.
/// "rest_state": u = 0, p = 0, theta = 1, no sources.
MmsCase mms_case(const std::string& name);
std::vector<std::string> mms_case_names();

struct ConvergenceLevel {
  int mesh_level = 0;
  double tau = 0.0;
};

/// tau_i = tau0 / 4^i on levels first, first + 1, ... (tau ~ h^2).
std::vector<ConvergenceLevel> space_study_levels(int first_level, int count, double tau0);
/// Fixed mesh, given steps.
std::vector<ConvergenceLevel> time_study_levels(int mesh_level, const std::vector<double>& taus);

struct ConvergenceOptions {
  double T = 0.0625;
  double picard_tol = 1e-10;
  int picard_max = 50;
};

struct ConvergenceRow {
  int mesh_level = 0;
  double h = 0.0;
  double tau = 0.0;
  int steps = 0;
  double err_u_l2 = 0.0;
  double err_du_l2 = 0.0;
  double err_theta_l2 = 0.0;
  int max_picard_iters = 0;
};

struct ConvergenceTable {
  std::string case_name;
  std::vector<ConvergenceRow> rows;
  /// Per consecutive pair: observed orders of (u L2, Du L2, theta L2),
  /// measured against h when the mesh changes and against tau otherwise.
  std::vector<std::array<double, 3>> orders;
};

ConvergenceTable run_convergence(const MmsCase& mms, const std::vector<ConvergenceLevel>& levels,
                                 const ConvergenceOptions& options = {});

struct WsuResult {
  std::vector<double> times;
  std::vector<double> relative_energy;
  double E0 = 0.0;
  GronwallFit fit;
  double min_density = 0.0;  // smallest relative-energy integrand seen
  bool bound_holds = false;  // E_j <= E0 exp(C_est t_j) (1e-12 slack)
};

/// Runs the scenario from its own data (reference) and from
/// (u0 + eps du, theta0 + eps dtheta), du = curl of sin^2(2 pi x) sin^2(pi y),
/// dtheta = cos(pi x) cos(pi y), and fits the Gronwall constant.
WsuResult run_wsu_experiment(const Scenario& base, double eps, const RunConfig& config);

}  // namespace thermoflow
