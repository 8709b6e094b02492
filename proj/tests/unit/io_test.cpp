#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "thermoflow/io.hpp"

using namespace thermoflow;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Trajectory short_run() {
  RunConfig c;
  c.mesh_level = 1;
  c.T = 0.02;
  c.tau = 0.01;
  return run(c);
}

}  // namespace

TEST(Io, CsvHasHeaderAndOneRowPerState) {
  const Trajectory tr = short_run();
  std::ostringstream out;
  write_diagnostics_csv(tr, out);
  const std::string text = out.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto lines = lines_of(text);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0],
            "t,kinetic,internal,total,dissipation,penalty_dissipation,entropy,entropy_production,min_theta,"
            "energy_residual,picard_iters,picard_residual");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::vector<double> v;
    for (std::string cell; std::getline(row, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 12u);
    // Values round-trip exactly at 17 significant digits.
    EXPECT_EQ(v[0], tr.records()[i - 1].t);
    EXPECT_EQ(v[1], tr.records()[i - 1].kinetic);
    EXPECT_EQ(v[8], tr.records()[i - 1].min_theta);
  }
}

TEST(Io, OutputIsDeterministic) {
  std::ostringstream a, b;
  write_diagnostics_csv(short_run(), a);
  write_diagnostics_csv(short_run(), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Io, VtkLayout) {
  const Trajectory tr = short_run();
  const StepState& s = tr.final_state();
  std::ostringstream out;
  write_fields_vtk(s, out);
  const std::string text = out.str();
  const Mesh& mesh = s.u.space().mesh();
  EXPECT_EQ(text.rfind("# vtk DataFile Version", 0), 0u);
  EXPECT_NE(text.find("DATASET UNSTRUCTURED_GRID"), std::string::npos);
  EXPECT_NE(text.find("POINTS " + std::to_string(mesh.num_vertices()) + " double"), std::string::npos);
  EXPECT_NE(text.find("CELLS " + std::to_string(mesh.num_triangles()) + " " + std::to_string(4 * mesh.num_triangles())),
            std::string::npos);
  EXPECT_NE(text.find("CELL_TYPES " + std::to_string(mesh.num_triangles())), std::string::npos);
  EXPECT_NE(text.find("POINT_DATA " + std::to_string(mesh.num_vertices())), std::string::npos);
  EXPECT_NE(text.find("VECTORS velocity double"), std::string::npos);
  EXPECT_NE(text.find("SCALARS temperature double"), std::string::npos);
  EXPECT_NE(text.find("SCALARS pressure double"), std::string::npos);
}

TEST(Io, UnwritablePathIsReported) {
  EXPECT_THROW(write_diagnostics_csv(short_run(), "/nonexistent/dir/x.csv"), ValidationError);
}
