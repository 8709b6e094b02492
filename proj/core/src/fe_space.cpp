#include "thermoflow/fe_space.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "thermoflow/fe_matrices.hpp"
#include "thermoflow/linear_solver.hpp"

namespace thermoflow {

Family parse_family(const std::string& name) {
  if (name == "P1_scalar" || name == "P1") return Family::P1Scalar;
  if (name == "P2_vector" || name == "P2") return Family::P2Vector;
  throw ValidationError("unknown finite element family: " + name);
}

std::string to_string(Family family) {
  return family == Family::P1Scalar ? "P1_scalar" : "P2_vector";
}

FunctionSpace::FunctionSpace(std::shared_ptr<const Mesh> mesh, Family family)
    : mesh_(std::move(mesh)), family_(family) {
  if (!mesh_) throw ValidationError("function space needs a mesh");
  num_nodes_ = mesh_->num_vertices() + (family_ == Family::P2Vector ? mesh_->num_edges() : 0);
  dirichlet_mask_.assign(static_cast<std::size_t>(dof_count()), 0);
  if (family_ == Family::P2Vector) {
    for (int c = 0; c < components(); ++c) {
      for (int n = 0; n < num_nodes_; ++n) {
        if (is_boundary_node(n)) {
          dirichlet_dofs_.push_back(dof(c, n));
          dirichlet_mask_[dof(c, n)] = 1;
        }
      }
    }
  }
}

std::array<int, 6> FunctionSpace::element_nodes(int t) const {
  const auto& v = mesh_->triangles()[t];
  std::array<int, 6> nodes{v[0], v[1], v[2], -1, -1, -1};
  if (family_ == Family::P2Vector) {
    const auto& e = mesh_->triangle_edges(t);
    const int nv = mesh_->num_vertices();
    nodes[3] = nv + e[0];
    nodes[4] = nv + e[1];
    nodes[5] = nv + e[2];
  }
  return nodes;
}

Vec2 FunctionSpace::node_coordinates(int node) const {
  const int nv = mesh_->num_vertices();
  if (node < nv) return mesh_->vertices()[node];
  const auto& e = mesh_->edges()[node - nv];
  return 0.5 * (mesh_->vertices()[e.v[0]] + mesh_->vertices()[e.v[1]]);
}

bool FunctionSpace::is_boundary_node(int node) const {
  const int nv = mesh_->num_vertices();
  if (node < nv) return mesh_->is_boundary_vertex(node);
  return mesh_->edges()[node - nv].boundary;
}

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, Family family) {
  return std::make_shared<const FunctionSpace>(std::move(mesh), family);
}

// ---------------------------------------------------------------------------

ElementValues::ElementValues(const FunctionSpace& space, const QuadratureRule& rule)
    : space_(&space), rule_(&rule), n_shapes_(space.nodes_per_element()) {
  const int nq = rule.size();
  shape_.resize(static_cast<std::size_t>(nq * n_shapes_));
  grad_coeff_.resize(shape_.size());
  grad_.resize(shape_.size());
  points_.resize(nq);
  jxw_.resize(nq);
  for (int q = 0; q < nq; ++q) {
    const auto& l = rule.points[q];
    for (int i = 0; i < n_shapes_; ++i) {
      double value = 0.0;
      std::array<double, 3> c{0.0, 0.0, 0.0};
      if (space.order() == 1) {
        value = l[i];
        c[i] = 1.0;
      } else if (i < 3) {
        value = l[i] * (2.0 * l[i] - 1.0);
        c[i] = 4.0 * l[i] - 1.0;
      } else {
        const int a = i - 3, b = (i - 2) % 3;
        value = 4.0 * l[a] * l[b];
        c[a] = 4.0 * l[b];
        c[b] = 4.0 * l[a];
      }
      shape_[q * n_shapes_ + i] = value;
      grad_coeff_[q * n_shapes_ + i] = c;
    }
  }
}

void ElementValues::reinit(int t) {
  element_ = t;
  const Mesh& mesh = space_->mesh();
  const Vec2 x0 = mesh.vertex(t, 0), x1 = mesh.vertex(t, 1), x2 = mesh.vertex(t, 2);
  Mat2 jac;
  jac.col(0) = x1 - x0;
  jac.col(1) = x2 - x0;
  const double det = jac.determinant();
  area_ = 0.5 * det;
  const Mat2 inv_t = jac.inverse().transpose();
  std::array<Vec2, 3> grad_lambda;
  grad_lambda[1] = inv_t.col(0);
  grad_lambda[2] = inv_t.col(1);
  grad_lambda[0] = -grad_lambda[1] - grad_lambda[2];
  const int nq = rule_->size();
  for (int q = 0; q < nq; ++q) {
    const auto& l = rule_->points[q];
    points_[q] = l[0] * x0 + l[1] * x1 + l[2] * x2;
    jxw_[q] = rule_->weights[q] * det;
    for (int i = 0; i < n_shapes_; ++i) {
      const auto& c = grad_coeff_[q * n_shapes_ + i];
      grad_[q * n_shapes_ + i] = c[0] * grad_lambda[0] + c[1] * grad_lambda[1] + c[2] * grad_lambda[2];
    }
  }
  nodes_ = space_->element_nodes(t);
}

// ---------------------------------------------------------------------------

DiscreteField::DiscreteField(SpacePtr space) : space_(std::move(space)) {
  coeffs_ = Vector::Zero(space_->dof_count());
}

DiscreteField::DiscreteField(SpacePtr space, Vector coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != space_->dof_count()) {
    throw ValidationError("coefficient vector length does not match the space");
  }
}

double DiscreteField::value(const ElementValues& ev, int q) const {
  double v = 0.0;
  for (int i = 0; i < ev.n_shapes(); ++i) v += coeffs_[ev.nodes()[i]] * ev.shape(q, i);
  return v;
}

Vec2 DiscreteField::gradient(const ElementValues& ev, int q) const {
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < ev.n_shapes(); ++i) g += coeffs_[ev.nodes()[i]] * ev.grad(q, i);
  return g;
}

Vec2 DiscreteField::vector_value(const ElementValues& ev, int q) const {
  const int nn = space_->num_nodes();
  Vec2 v = Vec2::Zero();
  for (int i = 0; i < ev.n_shapes(); ++i) {
    const int n = ev.nodes()[i];
    v.x() += coeffs_[n] * ev.shape(q, i);
    v.y() += coeffs_[nn + n] * ev.shape(q, i);
  }
  return v;
}

Mat2 DiscreteField::vector_gradient(const ElementValues& ev, int q) const {
  const int nn = space_->num_nodes();
  Mat2 g = Mat2::Zero();
  for (int i = 0; i < ev.n_shapes(); ++i) {
    const int n = ev.nodes()[i];
    g.row(0) += coeffs_[n] * ev.grad(q, i).transpose();
    g.row(1) += coeffs_[nn + n] * ev.grad(q, i).transpose();
  }
  return g;
}

Mat2 DiscreteField::sym_gradient(const ElementValues& ev, int q) const {
  const Mat2 g = vector_gradient(ev, q);
  return 0.5 * (g + g.transpose());
}

// ---------------------------------------------------------------------------

DiscreteField interpolate(const SpacePtr& space, const ScalarFunction& f) {
  if (space->components() != 1) throw ValidationError("scalar interpolation into a vector space");
  Vector c(space->dof_count());
  for (int n = 0; n < space->num_nodes(); ++n) c[n] = f(space->node_coordinates(n));
  return DiscreteField(space, std::move(c));
}

DiscreteField interpolate(const SpacePtr& space, const VectorFunction& f) {
  if (space->components() != 2) throw ValidationError("vector interpolation into a scalar space");
  Vector c(space->dof_count());
  const int nn = space->num_nodes();
  for (int n = 0; n < nn; ++n) {
    const Vec2 v = f(space->node_coordinates(n));
    c[n] = v.x();
    c[nn + n] = v.y();
  }
  return DiscreteField(space, std::move(c));
}

namespace {

constexpr int kProjectionDegree = 8;

Vector solve_mass(const FunctionSpace& space, const Vector& rhs) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(mass_matrix(space));
  if (ldlt.info() != Eigen::Success) {
    throw LinearSolveFailed("mass matrix is singular; dof map is broken");
  }
  Vector x = ldlt.solve(rhs);
  if (ldlt.info() != Eigen::Success) throw LinearSolveFailed("mass matrix solve failed");
  return x;
}

// rhs_i = integral of g . phi_i where g is supplied per quadrature point.
template <typename PointValue>
Vector load_vector(const FunctionSpace& space, PointValue&& g) {
  const auto& rule = quadrature_rule(kProjectionDegree);
  ElementValues ev(space, rule);
  Vector rhs = Vector::Zero(space.dof_count());
  const int nn = space.num_nodes();
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) {
      const auto value = g(t, q, ev.point(q));
      for (int i = 0; i < ev.n_shapes(); ++i) {
        const double w = ev.shape(q, i) * ev.jxw(q);
        if constexpr (std::is_same_v<std::decay_t<decltype(value)>, double>) {
          rhs[ev.nodes()[i]] += value * w;
        } else {
          rhs[ev.nodes()[i]] += value.x() * w;
          rhs[nn + ev.nodes()[i]] += value.y() * w;
        }
      }
    }
  }
  return rhs;
}

}  // namespace

DiscreteField l2_project(const SpacePtr& space, const ScalarFunction& f) {
  if (space->components() != 1) throw ValidationError("scalar projection into a vector space");
  Vector rhs = load_vector(*space, [&](int, int, const Vec2& x) { return f(x); });
  return DiscreteField(space, solve_mass(*space, rhs));
}

DiscreteField l2_project(const SpacePtr& space, const VectorFunction& f) {
  if (space->components() != 2) throw ValidationError("vector projection into a scalar space");
  Vector rhs = load_vector(*space, [&](int, int, const Vec2& x) { return f(x); });
  return DiscreteField(space, solve_mass(*space, rhs));
}

DiscreteField l2_project(const SpacePtr& space, const DiscreteField& f) {
  if (f.space().mesh_ptr() != space->mesh_ptr()) {
    throw ValidationError("l2_project of a field requires the same mesh");
  }
  if (f.space().components() != space->components()) {
    throw ValidationError("l2_project between scalar and vector spaces");
  }
  const auto& rule = quadrature_rule(kProjectionDegree);
  ElementValues src(f.space(), rule);
  Vector rhs;
  if (space->components() == 1) {
    rhs = load_vector(*space, [&](int t, int q, const Vec2&) {
      if (src.element() != t) src.reinit(t);
      return f.value(src, q);
    });
  } else {
    rhs = load_vector(*space, [&](int t, int q, const Vec2&) {
      if (src.element() != t) src.reinit(t);
      return f.vector_value(src, q);
    });
  }
  return DiscreteField(space, solve_mass(*space, rhs));
}

DiscreteField project_divergence_free(const SpacePtr& velocity_space,
                                      const SpacePtr& pressure_space, const VectorFunction& f) {
  if (velocity_space->family() != Family::P2Vector || pressure_space->family() != Family::P1Scalar) {
    throw ValidationError("divergence-free projection needs a P2 vector / P1 scalar pair");
  }
  const int nu = velocity_space->dof_count();
  const int np = pressure_space->dof_count();
  const SparseMatrix m = mass_matrix(*velocity_space);
  const SparseMatrix b = divergence_matrix(*velocity_space, *pressure_space);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(m.nonZeros() + 2 * b.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      triplets.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int k = 0; k < b.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) {
      triplets.emplace_back(nu + it.row(), it.col(), it.value());
      triplets.emplace_back(it.col(), nu + it.row(), it.value());
    }
  }
  std::vector<char> mask(static_cast<std::size_t>(nu + np), 0);
  for (int d : velocity_space->dirichlet_dofs()) mask[d] = 1;
  mask[nu] = 1;  // pressure constant mode
  constrain_triplets(triplets, mask);
  SparseMatrix system(nu + np, nu + np);
  system.setFromTriplets(triplets.begin(), triplets.end());

  Vector rhs = Vector::Zero(nu + np);
  rhs.head(nu) = load_vector(*velocity_space, [&](int, int, const Vec2& x) { return f(x); });
  for (int i = 0; i < nu + np; ++i) {
    if (mask[i]) rhs[i] = 0.0;
  }
  const Vector x = solve_sparse(system, rhs);
  return DiscreteField(velocity_space, x.head(nu));
}

// ---------------------------------------------------------------------------

NormKind parse_norm_kind(const std::string& name) {
  if (name == "L2") return NormKind::L2;
  if (name == "H1_semi") return NormKind::H1Semi;
  if (name == "Linf_nodal") return NormKind::LinfNodal;
  if (name == "Lp") return NormKind::Lp;
  throw ValidationError("unknown norm kind: " + name);
}

namespace {

template <typename Integrand>
double integrate_field(const DiscreteField& field, int degree, Integrand&& integrand) {
  const auto& rule = quadrature_rule(degree);
  ElementValues ev(field.space(), rule);
  double sum = 0.0;
  for (int t = 0; t < field.space().mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) sum += integrand(ev, q) * ev.jxw(q);
  }
  return sum;
}

double pointwise_abs(const DiscreteField& f, const ElementValues& ev, int q) {
  return f.space().components() == 1 ? std::abs(f.value(ev, q)) : f.vector_value(ev, q).norm();
}

double pointwise_grad(const DiscreteField& f, const ElementValues& ev, int q) {
  return f.space().components() == 1 ? f.gradient(ev, q).norm() : frobenius(f.vector_gradient(ev, q));
}

}  // namespace

double norm(const DiscreteField& field, NormKind kind, double p) {
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(integrate_field(field, kAssemblyDegree, [&](const ElementValues& ev, int q) {
        const double a = pointwise_abs(field, ev, q);
        return a * a;
      }));
    case NormKind::H1Semi:
      return std::sqrt(integrate_field(field, kAssemblyDegree, [&](const ElementValues& ev, int q) {
        const double a = pointwise_grad(field, ev, q);
        return a * a;
      }));
    case NormKind::LinfNodal: {
      const auto& s = field.space();
      double m = 0.0;
      for (int n = 0; n < s.num_nodes(); ++n) {
        double a = std::abs(field.coeffs()[n]);
        if (s.components() == 2) a = std::hypot(field.coeffs()[n], field.coeffs()[s.num_nodes() + n]);
        m = std::max(m, a);
      }
      return m;
    }
    case NormKind::Lp:
      if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("Lp norm needs p in [1, inf)");
      return std::pow(integrate_field(field, 8, [&](const ElementValues& ev, int q) {
                        return std::pow(pointwise_abs(field, ev, q), p);
                      }),
                      1.0 / p);
  }
  throw ValidationError("unknown norm kind");
}

double sym_grad_norm(const DiscreteField& u, double p) {
  if (u.space().components() != 2) throw ValidationError("symmetric gradient needs a vector field");
  if (!(p >= 1.0)) throw ValidationError("sym_grad_norm needs p >= 1");
  return std::pow(integrate_field(u, 8, [&](const ElementValues& ev, int q) {
                    return std::pow(frobenius(u.sym_gradient(ev, q)), p);
                  }),
                  1.0 / p);
}

double w1p_norm(const DiscreteField& field, double p) {
  if (!(p >= 1.0)) throw ValidationError("W^{1,p} norm needs p >= 1");
  return std::pow(integrate_field(field, 8, [&](const ElementValues& ev, int q) {
                    return std::pow(pointwise_abs(field, ev, q), p) +
                           std::pow(pointwise_grad(field, ev, q), p);
                  }),
                  1.0 / p);
}

double integrate(const DiscreteField& field) {
  if (field.space().components() != 1) throw ValidationError("integrate needs a scalar field");
  return integrate_field(field, kAssemblyDegree,
                         [&](const ElementValues& ev, int q) { return field.value(ev, q); });
}

double l2_error(const DiscreteField& field, const ScalarFunction& exact) {
  return std::sqrt(integrate_field(field, 8, [&](const ElementValues& ev, int q) {
    const double e = field.value(ev, q) - exact(ev.point(q));
    return e * e;
  }));
}

double l2_error(const DiscreteField& field, const VectorFunction& exact) {
  return std::sqrt(integrate_field(field, 8, [&](const ElementValues& ev, int q) {
    return (field.vector_value(ev, q) - exact(ev.point(q))).squaredNorm();
  }));
}

double sym_grad_error(const DiscreteField& u, const std::function<Mat2(const Vec2&)>& exact_grad) {
  return std::sqrt(integrate_field(u, 8, [&](const ElementValues& ev, int q) {
    const Mat2 g = exact_grad(ev.point(q));
    const Mat2 e = u.sym_gradient(ev, q) - 0.5 * (g + g.transpose());
    return ddot(e, e);
  }));
}

// ---------------------------------------------------------------------------

InfSupResult inf_sup_constant(const FunctionSpace& velocity_space,
                              const FunctionSpace& pressure_space) {
  if (velocity_space.family() != Family::P2Vector || pressure_space.family() != Family::P1Scalar ||
      velocity_space.mesh_ptr() != pressure_space.mesh_ptr()) {
    throw ValidationError("inf-sup test needs a Taylor-Hood pair on one mesh");
  }
  const int nu = velocity_space.dof_count();
  std::vector<int> interior;
  std::vector<int> position(static_cast<std::size_t>(nu), -1);
  for (int i = 0; i < nu; ++i) {
    if (!velocity_space.is_dirichlet(i)) {
      position[i] = static_cast<int>(interior.size());
      interior.push_back(i);
    }
  }
  const int ni = static_cast<int>(interior.size());
  const int np = pressure_space.dof_count();
  if (ni == 0) throw ValidationError("inf-sup test needs interior velocity dofs");

  auto restrict_cols = [&](const SparseMatrix& a, bool rows_too) {
    std::vector<Triplet> trip;
    for (int k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
        const int c = position[it.col()];
        if (c < 0) continue;
        int r = static_cast<int>(it.row());
        if (rows_too) {
          r = position[r];
          if (r < 0) continue;
        }
        trip.emplace_back(r, c, it.value());
      }
    }
    SparseMatrix out(rows_too ? ni : a.rows(), ni);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
  };
  const SparseMatrix a = restrict_cols(laplace_matrix(velocity_space), true);
  const SparseMatrix b = restrict_cols(divergence_matrix(velocity_space, pressure_space), false);

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw SolverError("velocity Laplacian factorization failed");
  const Eigen::MatrixXd bt = Eigen::MatrixXd(b.transpose());
  const Eigen::MatrixXd x = ldlt.solve(bt);
  Eigen::MatrixXd schur = b * x;
  schur = 0.5 * (schur + schur.transpose()).eval();
  const Eigen::MatrixXd mp = Eigen::MatrixXd(mass_matrix(pressure_space));

  InfSupResult result;
  result.pressure_dofs = np;
  {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(schur, mp, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw SolverError("inf-sup eigen-solver failed");
    result.smallest_raw = eig.eigenvalues()[0];
  }
  // Lift the constant mode: for q = 1 the shifted operator gives
  // shift * |Omega|, every mean-zero eigenpair is unchanged.
  const Vector m1 = mp * Vector::Ones(np);
  const double shift = 1e3;
  Eigen::MatrixXd shifted = schur + shift * m1 * m1.transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted, mp, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw SolverError("inf-sup eigen-solver failed");
  result.constant = std::sqrt(std::max(0.0, eig.eigenvalues()[0]));
  return result;
}

}  // namespace thermoflow
