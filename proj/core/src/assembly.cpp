#include "thermoflow/assembly.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "thermoflow/fe_matrices.hpp"

namespace thermoflow {

namespace {

void require_same_mesh(const DiscreteField& a, const DiscreteField& b) {
  if (a.space().mesh_ptr() != b.space().mesh_ptr()) {
    throw ValidationError("fields live on different meshes");
  }
}

// Reinitialises a set of ElementValues on one element.
struct ElementContext {
  ElementValues u;
  ElementValues s;

  ElementContext(const FunctionSpace& vspace, const FunctionSpace& sspace)
      : u(vspace, quadrature_rule(kAssemblyDegree)), s(sspace, quadrature_rule(kAssemblyDegree)) {}

  void reinit(int t) {
    u.reinit(t);
    s.reinit(t);
  }
};

}  // namespace

double trilinear_b(const DiscreteField& u, const DiscreteField& v, const DiscreteField& w,
                   ConvectiveForm form) {
  for (const auto* f : {&u, &v, &w}) {
    if (f->space().family() != Family::P2Vector || f->space_ptr() != u.space_ptr()) {
      throw ValidationError("trilinear_b needs three fields on one velocity space");
    }
  }
  ElementValues ev(u.space(), quadrature_rule(kAssemblyDegree));
  double sum = 0.0;
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) {
      const Vec2 uq = u.vector_value(ev, q);
      const Vec2 vq = v.vector_value(ev, q);
      const Vec2 wq = w.vector_value(ev, q);
      const Mat2 gv = v.vector_gradient(ev, q);
      const Mat2 gw = w.vector_gradient(ev, q);
      const double value = form == ConvectiveForm::SkewSymmetric
                               ? 0.5 * (wq.dot(gv * uq) - vq.dot(gw * uq))
                               : -vq.dot(gw * uq);
      sum += value * ev.jxw(q);
    }
  }
  return sum;
}

double trilinear_c(const DiscreteField& u, const DiscreteField& theta, const DiscreteField& eta,
                   ConvectiveForm form) {
  if (u.space().family() != Family::P2Vector) throw ValidationError("trilinear_c needs a velocity");
  if (theta.space_ptr() != eta.space_ptr() || theta.space().family() != Family::P1Scalar) {
    throw ValidationError("trilinear_c needs two fields on one temperature space");
  }
  require_same_mesh(u, theta);
  ElementContext ctx(u.space(), theta.space());
  double sum = 0.0;
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ctx.reinit(t);
    for (int q = 0; q < ctx.u.n_points(); ++q) {
      const Vec2 uq = u.vector_value(ctx.u, q);
      const double th = theta.value(ctx.s, q);
      const double et = eta.value(ctx.s, q);
      const Vec2 gth = theta.gradient(ctx.s, q);
      const Vec2 get = eta.gradient(ctx.s, q);
      const double value = form == ConvectiveForm::SkewSymmetric
                               ? 0.5 * (et * uq.dot(gth) - th * uq.dot(get))
                               : -th * uq.dot(get);
      sum += value * ctx.u.jxw(q);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------

SparseMatrix assemble_penalty_matrix(const DiscreteField& u_lag, const PenaltyParams& penalty) {
  const FunctionSpace& space = u_lag.space();
  const int nu = space.dof_count();
  const int nn = space.num_nodes();
  SparseMatrix m(nu, nu);
  if (!penalty.active()) return m;
  ElementValues ev(space, quadrature_rule(kAssemblyDegree));
  std::vector<Triplet> trip;
  Eigen::Matrix<double, 6, 6> local;
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    local.setZero();
    for (int q = 0; q < ev.n_points(); ++q) {
      const double speed = u_lag.vector_value(ev, q).norm();
      const double w = std::pow(speed, penalty.r_star - 2.0) / penalty.k * ev.jxw(q);
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) local(i, j) += w * ev.shape(q, i) * ev.shape(q, j);
      }
    }
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) trip.emplace_back(c * nn + ev.nodes()[i], c * nn + ev.nodes()[j], local(i, j));
      }
    }
  }
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

AssembledSystem assemble_momentum_system(const MomentumInputs& in) {
  if (!in.u_prev || !in.u_lag || !in.theta_lag || !in.model || !in.pressure_space) {
    throw ValidationError("momentum assembly is missing an input");
  }
  if (!(in.tau > 0.0)) throw ValidationError("time step tau must be positive");
  if (!(in.penalty.k > 0.0)) throw ValidationError("penalty parameter k must be positive");
  const FunctionSpace& vspace = in.u_lag->space();
  const FunctionSpace& pspace = *in.pressure_space;
  const FunctionSpace& tspace = in.theta_lag->space();
  if (in.u_prev->space_ptr() != in.u_lag->space_ptr()) throw ValidationError("velocity space mismatch");
  require_same_mesh(*in.u_lag, *in.theta_lag);
  for (int i = 0; i < in.theta_lag->coeffs().size(); ++i) {
    if (!(in.theta_lag->coeffs()[i] > 0.0)) {
      throw SolverError("non-positive lagged temperature at node " + std::to_string(i));
    }
  }

  const int nu = vspace.dof_count();
  const int np = pspace.dof_count();
  const int nn = vspace.num_nodes();
  const auto& rule = quadrature_rule(kAssemblyDegree);
  ElementValues ev(vspace, rule);
  ElementValues et(tspace, rule);
  ElementValues ep(pspace, rule);
  const double inv_tau = 1.0 / in.tau;
  const bool penalty = in.penalty.active();
  const ConstitutiveModel& model = *in.model;

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(vspace.mesh().num_triangles()) * (144 + 72));
  Vector rhs = Vector::Zero(nu + np);

  Eigen::Matrix<double, 12, 12> a;
  Eigen::Matrix<double, 3, 12> b;
  Eigen::Matrix<double, 12, 1> f;
  for (int t = 0; t < vspace.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    et.reinit(t);
    ep.reinit(t);
    a.setZero();
    b.setZero();
    f.setZero();
    for (int q = 0; q < ev.n_points(); ++q) {
      const double jxw = ev.jxw(q);
      const Vec2 ulag = in.u_lag->vector_value(ev, q);
      const Mat2 dlag = in.u_lag->sym_gradient(ev, q);
      const double th = in.theta_lag->value(et, q);
      const double nu_eff = effective_viscosity(model, dlag, std::max(th, 1e-300));
      double zeroth = inv_tau;
      if (penalty) zeroth += std::pow(ulag.norm(), in.penalty.r_star - 2.0) / in.penalty.k;
      const Vec2 uprev = in.u_prev->vector_value(ev, q);
      Vec2 load = inv_tau * uprev;
      if (in.force) load += in.force(ev.point(q));

      for (int i = 0; i < 6; ++i) {
        const double pi = ev.shape(q, i);
        const Vec2& gi = ev.grad(q, i);
        f(i) += load.x() * pi * jxw;
        f(6 + i) += load.y() * pi * jxw;
        for (int j = 0; j < 6; ++j) {
          const double pj = ev.shape(q, j);
          const Vec2& gj = ev.grad(q, j);
          double scalar = zeroth * pi * pj + 0.5 * nu_eff * gi.dot(gj);
          if (in.convection) scalar += 0.5 * (pi * ulag.dot(gj) - pj * ulag.dot(gi));
          scalar *= jxw;
          // D(phi_j e_b) : D(phi_i e_a) = 1/2 (delta_ab gi.gj + d_a phi_j d_b phi_i)
          a(i, j) += scalar + 0.5 * nu_eff * gj.x() * gi.x() * jxw;
          a(i, 6 + j) += 0.5 * nu_eff * gj.x() * gi.y() * jxw;
          a(6 + i, j) += 0.5 * nu_eff * gj.y() * gi.x() * jxw;
          a(6 + i, 6 + j) += scalar + 0.5 * nu_eff * gj.y() * gi.y() * jxw;
        }
      }
      for (int k = 0; k < 3; ++k) {
        const double w = ep.shape(q, k) * jxw;
        for (int j = 0; j < 6; ++j) {
          b(k, j) += w * ev.grad(q, j).x();
          b(k, 6 + j) += w * ev.grad(q, j).y();
        }
      }
    }
    std::array<int, 12> dofs;
    for (int i = 0; i < 6; ++i) {
      dofs[i] = ev.nodes()[i];
      dofs[6 + i] = nn + ev.nodes()[i];
    }
    for (int i = 0; i < 12; ++i) {
      rhs[dofs[i]] += f(i);
      for (int j = 0; j < 12; ++j) trip.emplace_back(dofs[i], dofs[j], a(i, j));
    }
    for (int k = 0; k < 3; ++k) {
      const int row = nu + ep.nodes()[k];
      for (int j = 0; j < 12; ++j) {
        trip.emplace_back(row, dofs[j], -b(k, j));
        trip.emplace_back(dofs[j], row, -b(k, j));
      }
    }
  }

  AssembledSystem sys;
  sys.velocity_dofs = nu;
  sys.pressure_dofs = np;
  sys.constrained.assign(static_cast<std::size_t>(nu + np), 0);
  for (int d : vspace.dirichlet_dofs()) sys.constrained[d] = 1;
  sys.constrained[nu] = 1;
  constrain_triplets(trip, sys.constrained);
  for (int i = 0; i < nu + np; ++i) {
    if (sys.constrained[i]) rhs[i] = 0.0;
  }
  sys.matrix.resize(nu + np, nu + np);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.rhs = std::move(rhs);
  return sys;
}

// ---------------------------------------------------------------------------

AssembledSystem assemble_temperature_system(const TemperatureInputs& in) {
  if (!in.theta_prev || !in.u_new || !in.theta_lag || !in.law || !in.model) {
    throw ValidationError("temperature assembly is missing an input");
  }
  if (!(in.tau > 0.0)) throw ValidationError("time step tau must be positive");
  const FunctionSpace& tspace = in.theta_lag->space();
  const FunctionSpace& vspace = in.u_new->space();
  require_same_mesh(*in.u_new, *in.theta_lag);
  const int n = tspace.dof_count();
  const double inv_tau = 1.0 / in.tau;
  const auto& rule = quadrature_rule(kAssemblyDegree);
  ElementValues ev(vspace, rule);
  ElementValues et(tspace, rule);

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(tspace.mesh().num_triangles()) * 9);
  Vector rhs = Vector::Zero(n);
  Eigen::Matrix3d local;
  Eigen::Vector3d f;
  for (int t = 0; t < tspace.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    et.reinit(t);
    local.setZero();
    f.setZero();
    for (int q = 0; q < et.n_points(); ++q) {
      const double jxw = et.jxw(q);
      const Vec2 u = in.u_new->vector_value(ev, q);
      const Mat2 D = in.u_new->sym_gradient(ev, q);
      const double th_lag = in.theta_lag->value(et, q);
      const double kappa = conductivity(*in.law, th_lag);
      double source = 0.0;
      if (D.squaredNorm() > 0.0) source = ddot(stress(*in.model, D, th_lag), D);
      if (in.heat_source) source += in.heat_source(et.point(q));
      const double th_prev = in.theta_prev->value(et, q);
      for (int i = 0; i < 3; ++i) {
        const double pi = et.shape(q, i);
        const Vec2& gi = et.grad(q, i);
        f(i) += source * pi * jxw;
        if (!in.lumped_mass) f(i) += inv_tau * th_prev * pi * jxw;
        for (int j = 0; j < 3; ++j) {
          const double pj = et.shape(q, j);
          const Vec2& gj = et.grad(q, j);
          double v = kappa * gi.dot(gj) + 0.5 * (pi * u.dot(gj) - pj * u.dot(gi));
          if (!in.lumped_mass) v += inv_tau * pi * pj;
          local(i, j) += v * jxw;
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int row = et.nodes()[i];
      rhs[row] += f(i);
      for (int j = 0; j < 3; ++j) trip.emplace_back(row, et.nodes()[j], local(i, j));
    }
  }
  if (in.lumped_mass) {
    const Vector m = lumped_mass(tspace);
    for (int i = 0; i < n; ++i) {
      trip.emplace_back(i, i, inv_tau * m[i]);
      rhs[i] += inv_tau * m[i] * in.theta_prev->coeffs()[i];
    }
  }
  AssembledSystem sys;
  sys.pressure_dofs = 0;
  sys.velocity_dofs = 0;
  sys.constrained.assign(static_cast<std::size_t>(n), 0);
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.rhs = std::move(rhs);
  return sys;
}

// ---------------------------------------------------------------------------

Vector dissipation_vector(const DiscreteField& u, const DiscreteField& theta,
                          const ConstitutiveModel& model) {
  require_same_mesh(u, theta);
  ElementContext ctx(u.space(), theta.space());
  Vector out = Vector::Zero(theta.space().dof_count());
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ctx.reinit(t);
    for (int q = 0; q < ctx.u.n_points(); ++q) {
      const Mat2 D = u.sym_gradient(ctx.u, q);
      if (D.squaredNorm() == 0.0) continue;
      const double d = ddot(stress(model, D, theta.value(ctx.s, q)), D) * ctx.u.jxw(q);
      for (int i = 0; i < ctx.s.n_shapes(); ++i) out[ctx.s.nodes()[i]] += d * ctx.s.shape(q, i);
    }
  }
  return out;
}

double QuadratureValues::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * jxw[i];
  return s;
}

QuadratureValues dissipation_density(const DiscreteField& u, const DiscreteField& theta,
                                     const ConstitutiveModel& model) {
  require_same_mesh(u, theta);
  ElementContext ctx(u.space(), theta.space());
  QuadratureValues out;
  const std::size_t total =
      static_cast<std::size_t>(u.space().mesh().num_triangles()) * quadrature_rule(kAssemblyDegree).size();
  out.values.reserve(total);
  out.jxw.reserve(total);
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ctx.reinit(t);
    for (int q = 0; q < ctx.u.n_points(); ++q) {
      const Mat2 D = u.sym_gradient(ctx.u, q);
      const double v = D.squaredNorm() == 0.0 ? 0.0 : ddot(stress(model, D, theta.value(ctx.s, q)), D);
      out.values.push_back(v);
      out.jxw.push_back(ctx.u.jxw(q));
    }
  }
  return out;
}

double total_dissipation(const DiscreteField& u, const DiscreteField& theta,
                         const ConstitutiveModel& model) {
  return dissipation_density(u, theta, model).integral();
}

double load_pairing(const VectorFunction& force, const DiscreteField& u) {
  if (!force) return 0.0;
  ElementValues ev(u.space(), quadrature_rule(kAssemblyDegree));
  double s = 0.0;
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) s += force(ev.point(q)).dot(u.vector_value(ev, q)) * ev.jxw(q);
  }
  return s;
}

std::pair<DiscreteField, DiscreteField> split_momentum_solution(const Vector& x,
                                                                const SpacePtr& velocity_space,
                                                                const SpacePtr& pressure_space) {
  const int nu = velocity_space->dof_count();
  const int np = pressure_space->dof_count();
  DiscreteField u(velocity_space, x.head(nu));
  for (int d : velocity_space->dirichlet_dofs()) u.coeffs()[d] = 0.0;
  DiscreteField p(pressure_space, x.segment(nu, np));
  const double area = pressure_space->mesh().total_area();
  const double mean = integrate(p) / area;
  p.coeffs().array() -= mean;
  return {std::move(u), std::move(p)};
}

}  // namespace thermoflow
