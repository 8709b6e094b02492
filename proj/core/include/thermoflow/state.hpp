#pragma once

#include <memory>

#include "thermoflow/fe_space.hpp"

namespace thermoflow {

/// Taylor-Hood P2/P1 velocity/pressure plus P1 temperature on one mesh.
struct Discretization {
  std::shared_ptr<const Mesh> mesh;
  SpacePtr velocity;
  SpacePtr pressure;
  SpacePtr temperature;
};

Discretization make_discretization(std::shared_ptr<const Mesh> mesh);

struct StepState {
  double t = 0.0;
  DiscreteField u;
  DiscreteField p;
  DiscreteField theta;
  int picard_iters = 0;
  double picard_residual = 0.0;
};

}  // namespace thermoflow
