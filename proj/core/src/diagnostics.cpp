#include "thermoflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoflow/fe_matrices.hpp"

namespace thermoflow {

namespace {

// Loops over quadrature points of a velocity and a temperature space on the
// same mesh.
template <typename Body>
void for_each_point(const FunctionSpace& vspace, const FunctionSpace& tspace, Body&& body) {
  const auto& rule = quadrature_rule(kAssemblyDegree);
  ElementValues ev(vspace, rule);
  ElementValues et(tspace, rule);
  for (int t = 0; t < vspace.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    et.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) body(ev, et, q);
  }
}

double positive_theta(double th) {
  if (!(th > 0.0)) throw SolverError("non-positive temperature in diagnostics");
  return th;
}

// Same quadrature as the assembled penalty matrix, so u^T P(u) u matches.
double penalty_term(const DiscreteField& u, const PenaltyParams& penalty) {
  if (!penalty.active()) return 0.0;
  ElementValues ev(u.space(), quadrature_rule(kAssemblyDegree));
  double sum = 0.0;
  for (int t = 0; t < u.space().mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.n_points(); ++q) sum += std::pow(u.vector_value(ev, q).norm(), penalty.r_star) * ev.jxw(q);
  }
  return sum / penalty.k;
}

}  // namespace

DiagnosticsRecord state_record(const StepState& state, const PhysicsParams& physics) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  const double ul2 = norm(state.u, NormKind::L2);
  rec.kinetic = 0.5 * ul2 * ul2;
  rec.internal = integrate(state.theta);
  rec.total = rec.kinetic + rec.internal;
  rec.penalty_dissipation = penalty_term(state.u, physics.penalty);
  rec.min_theta = min_temperature(state);
  for_each_point(state.u.space(), state.theta.space(), [&](const ElementValues& ev, const ElementValues& et, int q) {
    const double th = positive_theta(state.theta.value(et, q));
    const Vec2 g = state.theta.gradient(et, q);
    const Mat2 D = state.u.sym_gradient(ev, q);
    const double sd = D.squaredNorm() == 0.0 ? 0.0 : ddot(stress(physics.model, D, th), D);
    const double kappa = conductivity(physics.conductivity, th);
    const double w = ev.jxw(q);
    rec.dissipation += sd * w;
    rec.entropy += std::log(th) * w;
    rec.entropy_production += (kappa * g.squaredNorm() / (th * th) + sd / th) * w;
  });
  rec.picard_iters = state.picard_iters;
  rec.picard_residual = state.picard_residual;
  return rec;
}

EnergyBalance energy_balance_residual(const StepState& prev, const StepState& cur, double tau,
                                      const VectorFunction& f_avg, const PhysicsParams& physics) {
  EnergyBalance e;
  const double a = norm(cur.u, NormKind::L2);
  const double b = norm(prev.u, NormKind::L2);
  DiscreteField diff(cur.u.space_ptr(), cur.u.coeffs() - prev.u.coeffs());
  const double d = norm(diff, NormKind::L2);
  e.kinetic_jump = 0.5 * a * a - 0.5 * b * b;
  e.increment = 0.5 * d * d;
  e.dissipation = tau * total_dissipation(cur.u, cur.theta, physics.model);
  e.penalty = tau * penalty_term(cur.u, physics.penalty);
  e.work = tau * load_pairing(f_avg, cur.u);
  e.residual = e.kinetic_jump + e.increment + e.dissipation + e.penalty - e.work;
  e.scale = std::max({std::abs(e.kinetic_jump), 0.5 * a * a, 0.5 * b * b, e.increment,
                      std::abs(e.dissipation), e.penalty, std::abs(e.work)});
  return e;
}

InternalBalance internal_energy_residual(const StepState& prev, const StepState& cur, double tau,
                                         const ScalarFunction& heat_avg,
                                         const PhysicsParams& physics) {
  const double now = integrate(cur.theta);
  const double before = integrate(prev.theta);
  const double heating = tau * total_dissipation(cur.u, cur.theta, physics.model);
  double source = 0.0;
  if (heat_avg) {
    ElementValues et(cur.theta.space(), quadrature_rule(kAssemblyDegree));
    for (int t = 0; t < cur.theta.space().mesh().num_triangles(); ++t) {
      et.reinit(t);
      for (int q = 0; q < et.n_points(); ++q) source += heat_avg(et.point(q)) * et.jxw(q);
    }
    source *= tau;
  }
  InternalBalance r;
  r.residual = now - before - heating - source;
  r.scale = std::max({std::abs(now), std::abs(before), std::abs(heating), std::abs(source)});
  return r;
}

double entropy_residual(const std::vector<StepState>& states, const DiscreteField& psi,
                        std::size_t a, std::size_t b, const PhysicsParams& physics) {
  if (b >= states.size() || a > b) throw ValidationError("entropy window outside the trajectory");
  if (psi.coeffs().size() > 0 && psi.coeffs().minCoeff() < 0.0) {
    throw ValidationError("entropy test function must be nonnegative");
  }
  double total = 0.0;
  for (std::size_t j = a + 1; j <= b; ++j) {
    const StepState& cur = states[j];
    const StepState& prev = states[j - 1];
    const double tau = cur.t - prev.t;
    double step = 0.0;
    ElementValues ep(psi.space(), quadrature_rule(kAssemblyDegree));
    for_each_point(cur.u.space(), cur.theta.space(), [&](const ElementValues& ev, const ElementValues& et, int q) {
      if (q == 0) ep.reinit(ev.element());
      const double ps = psi.value(ep, q);
      const Vec2 gps = psi.gradient(ep, q);
      const double th = positive_theta(cur.theta.value(et, q));
      const double th_prev = positive_theta(prev.theta.value(et, q));
      const Vec2 gth = cur.theta.gradient(et, q);
      const Vec2 u = cur.u.vector_value(ev, q);
      const Mat2 D = cur.u.sym_gradient(ev, q);
      const double kappa = conductivity(physics.conductivity, th);
      const double sd = D.squaredNorm() == 0.0 ? 0.0 : ddot(stress(physics.model, D, th), D);
      const double lth = std::log(th);
      const double value = ps * (lth - std::log(th_prev)) +
                           tau * (-lth * u.dot(gps) + kappa * gth.dot(gps) / th -
                                  ps * (kappa * gth.squaredNorm() / (th * th) + sd / th));
      step += value * ev.jxw(q);
    });
    total += step;
  }
  return total;
}

RelativeEnergy relative_energy(const DiscreteField& u, const DiscreteField& theta,
                               const DiscreteField& ref_u, const DiscreteField& ref_theta) {
  if (u.space_ptr() != ref_u.space_ptr() || theta.space_ptr() != ref_theta.space_ptr()) {
    throw ValidationError("relative energy needs fields on matching spaces");
  }
  RelativeEnergy out;
  out.min_density = std::numeric_limits<double>::infinity();
  for_each_point(u.space(), theta.space(), [&](const ElementValues& ev, const ElementValues& et, int q) {
    const double th = theta.value(et, q);
    const double rt = ref_theta.value(et, q);
    if (!(th > 0.0) || !(rt > 0.0)) throw SolverError("non-positive temperature in relative energy");
    const Vec2 du = u.vector_value(ev, q) - ref_u.vector_value(ev, q);
    const double density = 0.5 * du.squaredNorm() + (th - rt) + rt * (std::log(rt) - std::log(th));
    out.value += density * ev.jxw(q);
    out.min_density = std::min(out.min_density, density);
  });
  return out;
}

RelativeEnergy relative_energy(const StepState& state, const StepState& reference) {
  return relative_energy(state.u, state.theta, reference.u, reference.theta);
}

GronwallFit gronwall_fit(const std::vector<double>& times, const std::vector<double>& values,
                         double E0) {
  if (times.size() != values.size()) throw ValidationError("gronwall_fit: size mismatch");
  GronwallFit fit;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] <= 0.0) continue;
    if (values[j] < 0.0) throw ValidationError("gronwall_fit: negative relative energy");
    if (E0 <= 0.0) {
      if (values[j] > 0.0) {
        fit.uniqueness_violation = true;
        fit.C_est = std::numeric_limits<double>::infinity();
      }
      continue;
    }
    if (values[j] > E0) fit.C_est = std::max(fit.C_est, std::log(values[j] / E0) / times[j]);
  }
  return fit;
}

double min_temperature(const StepState& state) { return state.theta.coeffs().minCoeff(); }

AprioriMonitors apriori_monitor(const std::vector<StepState>& states, const PhysicsParams& physics) {
  AprioriMonitors m;
  const double r = physics.model.r;
  const double rp = physics.model.r_prime();
  const double p_emb = 2.0 * r;  // r (d+2)/d with d = 2
  double emb = 0.0;
  double log_h1 = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const StepState& s = states[j];
    m.max_velocity_l2 = std::max(m.max_velocity_l2, norm(s.u, NormKind::L2));
    double l2 = 0.0, l4 = 0.0, grad2 = 0.0;
    for_each_point(s.u.space(), s.theta.space(), [&](const ElementValues&, const ElementValues& et, int q) {
      const double th = positive_theta(s.theta.value(et, q));
      const double lt = std::log(th);
      l2 += lt * lt * et.jxw(q);
      l4 += std::pow(lt, 4) * et.jxw(q);
      grad2 += s.theta.gradient(et, q).squaredNorm() / (th * th) * et.jxw(q);
    });
    m.log_theta_linf_l2 = std::max(m.log_theta_linf_l2, std::sqrt(l2));
    m.log_theta_linf_l4 = std::max(m.log_theta_linf_l4, std::pow(l4, 0.25));
    if (j == 0) continue;
    const double tau = s.t - states[j - 1].t;
    m.velocity_w1r += tau * std::pow(w1p_norm(s.u, r), r);
    double stress_sum = 0.0;
    for_each_point(s.u.space(), s.theta.space(), [&](const ElementValues& ev, const ElementValues& et, int q) {
      const Mat2 D = s.u.sym_gradient(ev, q);
      const Mat2 S = stress(physics.model, D, positive_theta(s.theta.value(et, q)));
      stress_sum += std::pow(frobenius(S), rp) * ev.jxw(q);
    });
    m.stress_lr_prime += tau * stress_sum;
    m.penalty += tau * penalty_term(s.u, physics.penalty);
    emb += tau * std::pow(norm(s.u, NormKind::Lp, p_emb), p_emb);
    log_h1 += tau * (l2 + grad2);
  }
  m.parabolic_embedding = std::pow(emb, 1.0 / p_emb);
  m.log_theta_l2_h1 = std::sqrt(log_h1);
  return m;
}

}  // namespace thermoflow
