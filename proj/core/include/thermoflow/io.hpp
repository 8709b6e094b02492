#pragma once

#include <iosfwd>
#include <string>

#include "thermoflow/time_stepper.hpp"

namespace thermoflow {

/// One row per state, 17 significant digits, LF line endings.
void write_diagnostics_csv(const Trajectory& trajectory, const std::string& path);
void write_diagnostics_csv(const Trajectory& trajectory, std::ostream& out);

/// Legacy ASCII VTK: triangles (cell type 5), velocity sampled at the
/// vertices, temperature and pressure as point scalars.
void write_fields_vtk(const StepState& state, const std::string& path);
void write_fields_vtk(const StepState& state, std::ostream& out);

}  // namespace thermoflow
