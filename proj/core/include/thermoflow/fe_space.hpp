#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "thermoflow/mesh.hpp"
#include "thermoflow/quadrature.hpp"
#include "thermoflow/types.hpp"

namespace thermoflow {

enum class Family { P1Scalar, P2Vector };

Family parse_family(const std::string& name);
std::string to_string(Family family);

/// Lagrange space on a triangulation.
///
/// P1Scalar: one dof per vertex. P2Vector: scalar P2 nodes are the vertices
/// followed by the edge midpoints (node V+e for edge e); vector dofs are
/// blocked by component, dof = component * num_nodes + node.
/// Dirichlet dofs (velocity only) are every component of every node on the
/// boundary.
class FunctionSpace {
 public:
  FunctionSpace(std::shared_ptr<const Mesh> mesh, Family family);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  Family family() const { return family_; }

  int order() const { return family_ == Family::P1Scalar ? 1 : 2; }
  int components() const { return family_ == Family::P1Scalar ? 1 : 2; }
  int num_nodes() const { return num_nodes_; }
  int dof_count() const { return components() * num_nodes_; }
  int nodes_per_element() const { return family_ == Family::P1Scalar ? 3 : 6; }
  int dof(int component, int node) const { return component * num_nodes_ + node; }

  /// Scalar node indices of triangle t: vertices, then edges 01, 12, 20.
  std::array<int, 6> element_nodes(int t) const;
  Vec2 node_coordinates(int node) const;
  bool is_boundary_node(int node) const;

  const std::vector<int>& dirichlet_dofs() const { return dirichlet_dofs_; }
  bool is_dirichlet(int dof) const { return dirichlet_mask_[dof] != 0; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  Family family_;
  int num_nodes_ = 0;
  std::vector<int> dirichlet_dofs_;
  std::vector<char> dirichlet_mask_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, Family family);

/// Shape values and physical gradients of the scalar basis of a space at the
/// points of a quadrature rule, re-initialised element by element.
class ElementValues {
 public:
  ElementValues(const FunctionSpace& space, const QuadratureRule& rule);

  void reinit(int t);

  int element() const { return element_; }
  int n_points() const { return rule_->size(); }
  int n_shapes() const { return n_shapes_; }
  double jxw(int q) const { return jxw_[q]; }
  const Vec2& point(int q) const { return points_[q]; }
  double shape(int q, int i) const { return shape_[q * n_shapes_ + i]; }
  const Vec2& grad(int q, int i) const { return grad_[q * n_shapes_ + i]; }
  const std::array<int, 6>& nodes() const { return nodes_; }
  double area() const { return area_; }

 private:
  const FunctionSpace* space_;
  const QuadratureRule* rule_;
  int n_shapes_;
  int element_ = -1;
  double area_ = 0.0;
  std::vector<double> shape_;
  std::vector<std::array<double, 3>> grad_coeff_;  // d(phi)/d(lambda_k)
  std::vector<Vec2> grad_;
  std::vector<Vec2> points_;
  std::vector<double> jxw_;
  std::array<int, 6> nodes_{};
};

/// Coefficient vector over a function space.
class DiscreteField {
 public:
  explicit DiscreteField(SpacePtr space);
  DiscreteField(SpacePtr space, Vector coeffs);

  const FunctionSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  // Evaluation on the element `ev` was last re-initialised to.
  double value(const ElementValues& ev, int q) const;
  Vec2 gradient(const ElementValues& ev, int q) const;
  Vec2 vector_value(const ElementValues& ev, int q) const;
  /// G(i,j) = d u_i / d x_j
  Mat2 vector_gradient(const ElementValues& ev, int q) const;
  Mat2 sym_gradient(const ElementValues& ev, int q) const;

 private:
  SpacePtr space_;
  Vector coeffs_;
};

DiscreteField interpolate(const SpacePtr& space, const ScalarFunction& f);
DiscreteField interpolate(const SpacePtr& space, const VectorFunction& f);

/// L2 projection onto the full space (no boundary constraint).
DiscreteField l2_project(const SpacePtr& space, const ScalarFunction& f);
DiscreteField l2_project(const SpacePtr& space, const VectorFunction& f);
DiscreteField l2_project(const SpacePtr& space, const DiscreteField& f);

/// L2 projection onto the discretely divergence-free velocities with zero
/// trace, computed from the saddle-point system with the pressure space as
/// multiplier space.
DiscreteField project_divergence_free(const SpacePtr& velocity_space,
                                      const SpacePtr& pressure_space, const VectorFunction& f);

enum class NormKind { L2, H1Semi, LinfNodal, Lp };
NormKind parse_norm_kind(const std::string& name);

double norm(const DiscreteField& field, NormKind kind, double p = 2.0);
/// ||D u||_{L^p} for a vector field.
double sym_grad_norm(const DiscreteField& u, double p = 2.0);
/// (||u||_p^p + ||grad u||_p^p)^(1/p)
double w1p_norm(const DiscreteField& field, double p);
double integrate(const DiscreteField& field);

double l2_error(const DiscreteField& field, const ScalarFunction& exact);
double l2_error(const DiscreteField& field, const VectorFunction& exact);
/// ||D u_h - D u||_{L2} with `exact_grad` returning G(i,j) = d u_i / d x_j.
double sym_grad_error(const DiscreteField& u, const std::function<Mat2(const Vec2&)>& exact_grad);

struct InfSupResult {
  double constant = 0.0;     // sqrt of the smallest retained eigenvalue
  double smallest_raw = 0.0; // smallest eigenvalue with the constant mode kept
  int pressure_dofs = 0;
};

/// Discrete LBB constant: smallest generalised singular value of the
/// divergence block, velocity measured in the H1 seminorm with zero trace,
/// pressure in L2 restricted to mean-zero functions.
InfSupResult inf_sup_constant(const FunctionSpace& velocity_space,
                              const FunctionSpace& pressure_space);

}  // namespace thermoflow
