#include "thermoflow/fe_matrices.hpp"

namespace thermoflow {

namespace {

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

SparseMatrix mass_matrix(const FunctionSpace& space) {
  ElementValues ev(space, quadrature_rule(kAssemblyDegree));
  const int nn = space.num_nodes();
  const int ns = space.nodes_per_element();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.mesh().num_triangles() * ns * ns * space.components()));
  Eigen::MatrixXd local(ns, ns);
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    local.setZero();
    for (int q = 0; q < ev.n_points(); ++q) {
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) local(i, j) += ev.shape(q, i) * ev.shape(q, j) * ev.jxw(q);
      }
    }
    for (int c = 0; c < space.components(); ++c) {
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) {
          t.emplace_back(c * nn + ev.nodes()[i], c * nn + ev.nodes()[j], local(i, j));
        }
      }
    }
  }
  return from_triplets(space.dof_count(), space.dof_count(), t);
}

Vector lumped_mass(const FunctionSpace& space) {
  if (space.family() != Family::P1Scalar) throw ValidationError("mass lumping is defined for P1 only");
  Vector m = Vector::Zero(space.dof_count());
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    const double a = space.mesh().area(e) / 3.0;
    for (int v : space.mesh().triangles()[e]) m[v] += a;
  }
  return m;
}

SparseMatrix laplace_matrix(const FunctionSpace& space) {
  ElementValues ev(space, quadrature_rule(kAssemblyDegree));
  const int nn = space.num_nodes();
  const int ns = space.nodes_per_element();
  std::vector<Triplet> t;
  Eigen::MatrixXd local(ns, ns);
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    local.setZero();
    for (int q = 0; q < ev.n_points(); ++q) {
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) local(i, j) += ev.grad(q, i).dot(ev.grad(q, j)) * ev.jxw(q);
      }
    }
    for (int c = 0; c < space.components(); ++c) {
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) {
          t.emplace_back(c * nn + ev.nodes()[i], c * nn + ev.nodes()[j], local(i, j));
        }
      }
    }
  }
  return from_triplets(space.dof_count(), space.dof_count(), t);
}

SparseMatrix divergence_matrix(const FunctionSpace& velocity_space,
                               const FunctionSpace& pressure_space) {
  if (velocity_space.mesh_ptr() != pressure_space.mesh_ptr()) {
    throw ValidationError("divergence matrix needs spaces on one mesh");
  }
  const auto& rule = quadrature_rule(kAssemblyDegree);
  ElementValues ev_u(velocity_space, rule);
  ElementValues ev_p(pressure_space, rule);
  const int nn = velocity_space.num_nodes();
  std::vector<Triplet> t;
  for (int e = 0; e < velocity_space.mesh().num_triangles(); ++e) {
    ev_u.reinit(e);
    ev_p.reinit(e);
    Eigen::Matrix<double, 3, 12> local = Eigen::Matrix<double, 3, 12>::Zero();
    for (int q = 0; q < ev_u.n_points(); ++q) {
      for (int i = 0; i < 3; ++i) {
        const double w = ev_p.shape(q, i) * ev_u.jxw(q);
        for (int j = 0; j < 6; ++j) {
          local(i, j) += w * ev_u.grad(q, j).x();
          local(i, 6 + j) += w * ev_u.grad(q, j).y();
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 6; ++j) {
        t.emplace_back(ev_p.nodes()[i], ev_u.nodes()[j], local(i, j));
        t.emplace_back(ev_p.nodes()[i], nn + ev_u.nodes()[j], local(i, 6 + j));
      }
    }
  }
  return from_triplets(pressure_space.dof_count(), velocity_space.dof_count(), t);
}

void constrain_triplets(std::vector<Triplet>& triplets, const std::vector<char>& mask) {
  std::erase_if(triplets, [&](const Triplet& t) { return mask[t.row()] || mask[t.col()]; });
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
  }
}

}  // namespace thermoflow
