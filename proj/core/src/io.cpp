#include "thermoflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace thermoflow {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw SolverError("I/O failure while writing '" + path + "'");
}

}  // namespace

void write_diagnostics_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,kinetic,internal,total,dissipation,penalty_dissipation,entropy,entropy_production,"
         "min_theta,energy_residual,picard_iters,picard_residual\n";
  for (const auto& r : trajectory.records()) {
    out << num(r.t) << ',' << num(r.kinetic) << ',' << num(r.internal) << ',' << num(r.total) << ','
        << num(r.dissipation) << ',' << num(r.penalty_dissipation) << ',' << num(r.entropy) << ','
        << num(r.entropy_production) << ',' << num(r.min_theta) << ',' << num(r.energy_residual) << ','
        << r.picard_iters << ',' << num(r.picard_residual) << '\n';
  }
}

void write_diagnostics_csv(const Trajectory& trajectory, const std::string& path) {
  auto out = open_output(path);
  write_diagnostics_csv(trajectory, out);
  finish(out, path);
}

void write_fields_vtk(const StepState& state, std::ostream& out) {
  const Mesh& mesh = state.u.space().mesh();
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();
  const int nn = state.u.space().num_nodes();
  out << "# vtk DataFile Version 3.0\n"
      << "thermoflow t=" << num(state.t) << "\n"
      << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const auto& v : mesh.vertices()) out << num(v.x()) << ' ' << num(v.y()) << " 0\n";
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t) out << "5\n";
  out << "POINT_DATA " << nv << '\n';
  // P2 vertex nodes come first, so the vertex values are coefficients 0..nv-1.
  out << "VECTORS velocity double\n";
  for (int v = 0; v < nv; ++v) {
    out << num(state.u.coeffs()[v]) << ' ' << num(state.u.coeffs()[nn + v]) << " 0\n";
  }
  out << "SCALARS temperature double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << num(state.theta.coeffs()[v]) << '\n';
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << num(state.p.coeffs()[v]) << '\n';
}

void write_fields_vtk(const StepState& state, const std::string& path) {
  auto out = open_output(path);
  write_fields_vtk(state, out);
  finish(out, path);
}

}  // namespace thermoflow
