#include "thermoflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

namespace thermoflow {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles, int level)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), level_(level) {
  if (vertices_.empty() || triangles_.empty()) {
    throw ValidationError("mesh must contain at least one triangle");
  }
  const int nv = num_vertices();
  for (auto& tri : triangles_) {
    for (int v : tri) {
      if (v < 0 || v >= nv) throw ValidationError("triangle references unknown vertex");
    }
    double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (a < 0.0) {
      std::swap(tri[1], tri[2]);
      a = -a;
    }
    if (!(a > 0.0)) throw ValidationError("degenerate triangle in mesh");
  }

  std::map<std::pair<int, int>, int> index;
  std::vector<int> owners;
  triangle_edges_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const auto key = edge_key(triangles_[t][k], triangles_[t][(k + 1) % 3]);
      auto [it, inserted] = index.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back(Edge{{key.first, key.second}, false});
        owners.push_back(0);
      }
      ++owners[it->second];
      triangle_edges_[t][k] = it->second;
    }
  }

  boundary_vertex_.assign(vertices_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (owners[e] > 2) throw ValidationError("non-manifold edge in mesh");
    if (owners[e] == 1) {
      edges_[e].boundary = true;
      boundary_edges_.push_back(static_cast<int>(e));
      boundary_vertex_[edges_[e].v[0]] = 1;
      boundary_vertex_[edges_[e].v[1]] = 1;
    }
  }

  for (int t = 0; t < num_triangles(); ++t) h_max_ = std::max(h_max_, diameter(t));
}

double Mesh::area(int t) const {
  const auto& tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::diameter(int t) const {
  const auto& tri = triangles_[t];
  double d = 0.0;
  for (int k = 0; k < 3; ++k) {
    d = std::max(d, (vertices_[tri[k]] - vertices_[tri[(k + 1) % 3]]).norm());
  }
  return d;
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < num_triangles(); ++t) sum += area(t);
  return sum;
}

Mesh build_structured_mesh(int nx, int ny, double width, double height) {
  if (nx < 1 || ny < 1) throw ValidationError("structured mesh needs nx, ny >= 1");
  if (!(width > 0.0) || !(height > 0.0)) {
    throw ValidationError("structured mesh needs positive width and height");
  }
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      vertices.emplace_back(width * i / nx, height * j / ny);
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), 0);
}

Mesh unit_square_mesh(int level) {
  if (level < 0 || level > 10) throw ValidationError("mesh level must lie in [0, 10]");
  const int n = 1 << level;
  Mesh base = build_structured_mesh(n, n, 1.0, 1.0);
  return Mesh(base.vertices(), base.triangles(), level);
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Vec2> vertices = mesh.vertices();
  const int nv = mesh.num_vertices();
  for (const auto& e : mesh.edges()) {
    vertices.push_back(0.5 * (mesh.vertices()[e.v[0]] + mesh.vertices()[e.v[1]]));
  }
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(4 * mesh.triangles().size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    const auto& e = mesh.triangle_edges(t);
    const int m01 = nv + e[0];
    const int m12 = nv + e[1];
    const int m20 = nv + e[2];
    triangles.push_back({v[0], m01, m20});
    triangles.push_back({m01, v[1], m12});
    triangles.push_back({m20, m12, v[2]});
    triangles.push_back({m01, m12, m20});
  }
  return Mesh(std::move(vertices), std::move(triangles), mesh.level() + 1);
}

QualityReport mesh_quality(const Mesh& mesh) {
  QualityReport report;
  report.min_angle = 180.0;
  report.max_angle = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    std::array<double, 3> len{};
    for (int k = 0; k < 3; ++k) {
      len[k] = (mesh.vertex(t, (k + 1) % 3) - mesh.vertex(t, (k + 2) % 3)).norm();
    }
    for (int k = 0; k < 3; ++k) {
      // angle at vertex k is opposite side len[k]
      const double a = len[k], b = len[(k + 1) % 3], c = len[(k + 2) % 3];
      const double cosine = std::clamp((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0);
      const double angle = std::acos(cosine) * 180.0 / std::numbers::pi;
      report.min_angle = std::min(report.min_angle, angle);
      report.max_angle = std::max(report.max_angle, angle);
    }
    const double perimeter = len[0] + len[1] + len[2];
    const double inradius = 2.0 * mesh.area(t) / perimeter;
    report.shape_regularity = std::max(report.shape_regularity, mesh.diameter(t) / inradius);
  }
  report.is_acute = report.max_angle <= 90.0 + 1e-12;
  return report;
}

Mesh read_mesh(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw ValidationError(std::string("mesh file truncated while reading ") + what);
  };
  next_line("header");
  long nv = 0, nt = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nt) || nv < 3 || nt < 1) throw ValidationError("bad mesh header: " + line);
  }
  std::vector<Vec2> vertices(static_cast<std::size_t>(nv));
  for (auto& v : vertices) {
    next_line("vertices");
    std::istringstream ss(line);
    if (!(ss >> v.x() >> v.y())) throw ValidationError("bad vertex line: " + line);
  }
  std::vector<std::array<int, 3>> triangles(static_cast<std::size_t>(nt));
  for (auto& t : triangles) {
    next_line("triangles");
    std::istringstream ss(line);
    if (!(ss >> t[0] >> t[1] >> t[2])) throw ValidationError("bad triangle line: " + line);
  }
  return Mesh(std::move(vertices), std::move(triangles), 0);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open mesh file: " + path);
  return read_mesh(in);
}

}  // namespace thermoflow
