#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "thermoflow/types.hpp"

namespace thermoflow {

struct Edge {
  std::array<int, 2> v;
  bool boundary = false;
};

/// Conforming triangulation of a polygonal domain.
///
/// Triangles are stored counter-clockwise. Edge k of a triangle joins its
/// local vertices k and (k+1)%3. A boundary edge is an edge owned by exactly
/// one triangle; the whole boundary carries a single tag.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles, int level = 0);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  double h_max() const { return h_max_; }
  int level() const { return level_; }

  double area(int t) const;
  double diameter(int t) const;
  double total_area() const;
  Vec2 vertex(int t, int local) const { return vertices_[triangles_[t][local]]; }

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<int> boundary_edges_;
  std::vector<char> boundary_vertex_;
  double h_max_ = 0.0;
  int level_ = 0;
};

/// nx*ny cells on [0,width]x[0,height], each cut along the (0,0)-(1,1)
/// diagonal, so every triangle is right-angled.
Mesh build_structured_mesh(int nx, int ny, double width, double height);

/// Unit square with 2^level cells per side.
Mesh unit_square_mesh(int level);

/// Red refinement: every triangle is split into four by its edge midpoints.
Mesh refine_uniform(const Mesh& mesh);

struct QualityReport {
  double min_angle = 0.0;         // degrees
  double max_angle = 0.0;         // degrees
  double shape_regularity = 0.0;  // max over triangles of diameter / inradius
  bool is_acute = false;          // max_angle <= 90 + 1e-12
};

QualityReport mesh_quality(const Mesh& mesh);

// Plain-text node/element list: "NV NT", NV lines "x y", NT lines "i j k".
Mesh read_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);

}  // namespace thermoflow
