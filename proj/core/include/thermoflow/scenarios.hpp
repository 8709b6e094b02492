#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermoflow/constitutive.hpp"
#include "thermoflow/types.hpp"

namespace thermoflow {

using TimeTensorFunction = std::function<Mat2(double, const Vec2&)>;

/// Initial data, loads and (for manufactured solutions) the exact fields.
/// A scenario that carries its own model or conductivity overrides the
/// run configuration, since its sources were derived for that closure.
struct Scenario {
  std::string name;
  VectorFunction u0;
  ScalarFunction theta0;
  TimeVectorFunction force;        // empty: f = 0
  TimeScalarFunction heat_source;  // empty: no volumetric heating

  TimeVectorFunction exact_u;
  TimeTensorFunction exact_grad_u;  // G(i,j) = d u_i / d x_j
  TimeScalarFunction exact_p;
  TimeScalarFunction exact_theta;

  std::optional<ConstitutiveModel> model;
  std::optional<ConductivityLaw> conductivity;

  bool has_exact_solution() const { return static_cast<bool>(exact_u); }
};

/// Registry: "rest", "decay", "decay_hot" and the manufactured cases
/// "stokes_heat", "carreau_heat", "rest_state".
Scenario make_scenario(const std::string& name);
std::vector<std::string> scenario_names();

/// Stream function sin^2(pi x) sin^2(pi y) and its curl, zero on the
/// boundary of the unit square.
VectorFunction decay_velocity();
/// curl of sin^2(2 pi x) sin^2(pi y): divergence-free, zero trace.
VectorFunction perturbation_velocity();

}  // namespace thermoflow
