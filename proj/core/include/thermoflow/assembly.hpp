#pragma once

#include <limits>
#include <vector>

#include "thermoflow/constitutive.hpp"
#include "thermoflow/fe_space.hpp"

namespace thermoflow {

/// Which branch of the convective forms to evaluate. The skew-symmetric one
/// is what the solver uses; the standard one is kept for comparison on
/// pointwise divergence-free fields.
enum class ConvectiveForm { Standard, SkewSymmetric };

/// Skew form: 1/2 int [ w . (grad v) u  -  v . (grad w) u ]
/// Standard:  -int v . (grad w) u
double trilinear_b(const DiscreteField& u, const DiscreteField& v, const DiscreteField& w,
                   ConvectiveForm form = ConvectiveForm::SkewSymmetric);

/// Skew form: 1/2 int [ eta u . grad theta  -  theta u . grad eta ]
/// Standard:  -int theta u . grad eta
double trilinear_c(const DiscreteField& u, const DiscreteField& theta, const DiscreteField& eta,
                   ConvectiveForm form = ConvectiveForm::SkewSymmetric);

/// Zeroth-order penalty (1/k) |u|^(r_star - 2) u. k = inf switches it off.
struct PenaltyParams {
  double k = std::numeric_limits<double>::infinity();
  double r_star = 6.0;

  bool active() const { return std::isfinite(k); }
};

/// Linear system plus the layout needed to read it back. The momentum
/// system is ordered [velocity; pressure]; constrained rows (velocity
/// boundary dofs, first pressure dof) are identity rows with zero rhs.
struct AssembledSystem {
  SparseMatrix matrix;
  Vector rhs;
  int velocity_dofs = 0;
  int pressure_dofs = 0;
  std::vector<char> constrained;
};

struct MomentumInputs {
  const DiscreteField* u_prev = nullptr;
  const DiscreteField* u_lag = nullptr;
  const DiscreteField* theta_lag = nullptr;
  SpacePtr pressure_space;
  double tau = 0.0;
  VectorFunction force;  // time-averaged load; empty means zero
  PenaltyParams penalty;
  const ConstitutiveModel* model = nullptr;
  bool convection = true;
};

/// Picard-linearised momentum step:
///   (1/tau) M u + A(nu_eff(D u_lag, theta_lag)) u + B(u_lag; u, .)
///   + (1/k) P(|u_lag|^(r*-2)) u - D^T p = (1/tau) M u_prev + f,   -D u = 0.
AssembledSystem assemble_momentum_system(const MomentumInputs& in);

/// (1/k) int |u_lag|^(r*-2) phi_i . phi_j over the whole velocity space.
SparseMatrix assemble_penalty_matrix(const DiscreteField& u_lag, const PenaltyParams& penalty);

struct TemperatureInputs {
  const DiscreteField* theta_prev = nullptr;
  const DiscreteField* u_new = nullptr;
  const DiscreteField* theta_lag = nullptr;
  double tau = 0.0;
  const ConductivityLaw* law = nullptr;
  const ConstitutiveModel* model = nullptr;
  bool lumped_mass = false;
  ScalarFunction heat_source;  // verification-only volumetric source
};

/// (1/tau) M theta + K(kappa(theta_lag)) theta + C(u_new; theta, .)
///   = (1/tau) M theta_prev + int S(D u_new, theta_lag) : D u_new psi (+ source)
AssembledSystem assemble_temperature_system(const TemperatureInputs& in);

/// Entries int S(Du, theta) : Du phi_i over the temperature space.
Vector dissipation_vector(const DiscreteField& u, const DiscreteField& theta,
                          const ConstitutiveModel& model);

struct QuadratureValues {
  std::vector<double> values;
  std::vector<double> jxw;

  double integral() const;
};

/// Pointwise S(Du, theta) : Du at the assembly quadrature points.
QuadratureValues dissipation_density(const DiscreteField& u, const DiscreteField& theta,
                                     const ConstitutiveModel& model);

/// int S(Du, theta) : Du
double total_dissipation(const DiscreteField& u, const DiscreteField& theta,
                         const ConstitutiveModel& model);

/// int f . u
double load_pairing(const VectorFunction& force, const DiscreteField& u);

/// Split the momentum solution into velocity and pressure, the latter shifted
/// to mean zero.
std::pair<DiscreteField, DiscreteField> split_momentum_solution(const Vector& x,
                                                                const SpacePtr& velocity_space,
                                                                const SpacePtr& pressure_space);

}  // namespace thermoflow
