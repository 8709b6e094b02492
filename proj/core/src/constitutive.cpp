#include "thermoflow/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace thermoflow {

ModelKind parse_model_kind(const std::string& name) {
  if (name == "carreau_yasuda") return ModelKind::CarreauYasuda;
  if (name == "power_law") return ModelKind::PowerLaw;
  if (name == "hb_regularized") return ModelKind::HbRegularized;
  throw ValidationError("unknown model kind: " + name);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::CarreauYasuda: return "carreau_yasuda";
    case ModelKind::PowerLaw: return "power_law";
    case ModelKind::HbRegularized: return "hb_regularized";
  }
  return "unknown";
}

double SaturatingCoefficient::operator()(double s) const {
  const double sp = std::max(s, 0.0);
  return base + amplitude * sp / (1.0 + sp);
}

ConstitutiveModel ConstitutiveModel::power_law(double r, double K) {
  ConstitutiveModel m;
  m.kind = ModelKind::PowerLaw;
  m.r = r;
  m.K = K;
  m.validate();
  return m;
}

ConstitutiveModel ConstitutiveModel::carreau_yasuda(double r, SaturatingCoefficient alpha,
                                                    SaturatingCoefficient beta,
                                                    SaturatingCoefficient gamma) {
  ConstitutiveModel m;
  m.kind = ModelKind::CarreauYasuda;
  m.r = r;
  m.alpha = alpha;
  m.beta = beta;
  m.gamma = gamma;
  m.validate();
  return m;
}

ConstitutiveModel ConstitutiveModel::hb_regularized(double r, double K, double tau_y, double eps_reg) {
  ConstitutiveModel m;
  m.kind = ModelKind::HbRegularized;
  m.r = r;
  m.K = K;
  m.tau_y = tau_y;
  m.eps_reg = eps_reg;
  m.validate();
  return m;
}

bool ConstitutiveModel::depends_on_temperature() const {
  return kind == ModelKind::CarreauYasuda &&
         (alpha.amplitude != 0.0 || beta.amplitude != 0.0 || gamma.amplitude != 0.0);
}

void ConstitutiveModel::validate() const {
  if (!(r > 1.0) || !std::isfinite(r)) {
    throw ValidationError("model.r must exceed 2d/(d+2) = 1, got " + std::to_string(r));
  }
  switch (kind) {
    case ModelKind::CarreauYasuda:
      for (const auto* c : {&alpha, &beta, &gamma}) {
        if (!(c->base > 0.0) || c->amplitude < 0.0) {
          throw ValidationError("Carreau-Yasuda coefficients need base > 0 and amplitude >= 0");
        }
      }
      break;
    case ModelKind::PowerLaw:
      if (!(K > 0.0)) throw ValidationError("model.K must be positive");
      break;
    case ModelKind::HbRegularized:
      if (!(K > 0.0)) throw ValidationError("model.K must be positive");
      if (tau_y < 0.0) throw ValidationError("model.tau_y must be non-negative");
      if (!(eps_reg > 0.0 && eps_reg < 1.0)) throw ValidationError("model.eps_reg must lie in (0, 1)");
      break;
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPowerLawShearFloor = 1e-8;

// Root b in (0, d) of tau + K b^(r-1) - (d - b)/eps + eps d = 0.
double hb_solve_b(const ConstitutiveModel& m, double d) {
  const double eps = m.eps_reg;
  auto f = [&](double b) { return m.tau_y + m.K * std::pow(b, m.r - 1.0) - (d - b) / eps + eps * d; };
  auto df = [&](double b) { return m.K * (m.r - 1.0) * std::pow(b, m.r - 2.0) + 1.0 / eps; };
  double lo = 0.0, hi = d;
  double b = 0.5 * d;
  const double scale = std::max({1.0, m.tau_y, d / eps});
  for (int iter = 0; iter < 100; ++iter) {
    const double fb = f(b);
    if (std::abs(fb) <= 1e-12 * scale) return b;
    if (fb > 0.0) hi = b; else lo = b;
    double next = b - fb / df(b);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * std::max(1.0, d)) return next;
    b = next;
  }
  if (std::abs(f(b)) <= 1e-10 * scale) return b;
  throw SolverError("Herschel-Bulkley root finder did not converge");
}

}  // namespace

double hb_stress_magnitude(const ConstitutiveModel& m, double d) {
  if (!(d > 0.0)) return 0.0;
  const double eps = m.eps_reg;
  // At b = 0 the argument S - eps D has magnitude d (1 - eps^2)/eps.
  if (d * (1.0 - eps * eps) / eps <= m.tau_y) return d / eps;
  const double b = hb_solve_b(m, d);
  return (d - b) / eps;
}

Mat2 hb_regularized_solve(const ConstitutiveModel& m, const Mat2& D, double) {
  const double d = frobenius(D);
  if (d == 0.0) return Mat2::Zero();
  return (hb_stress_magnitude(m, d) / d) * D;
}

double hb_implicit_residual(const ConstitutiveModel& m, const Mat2& S, const Mat2& D) {
  const Mat2 a = S - m.eps_reg * D;
  const Mat2 b = D - m.eps_reg * S;
  const double na = frobenius(a), nb = frobenius(b);
  const double excess = std::max(na - m.tau_y, 0.0);
  const double power = nb > 0.0 ? std::pow(nb, m.r - 2.0) : 0.0;
  const Mat2 g = excess * a - m.K * power * (m.tau_y + excess) * b;
  return frobenius(g);
}

double effective_viscosity(const ConstitutiveModel& m, double shear, double theta) {
  if (!(theta > 0.0)) throw ValidationError("temperature must be positive in the stress law");
  switch (m.kind) {
    case ModelKind::CarreauYasuda:
      return m.alpha(theta) + m.beta(theta) * std::pow(1.0 + m.gamma(theta) * shear * shear, 0.5 * (m.r - 2.0));
    case ModelKind::PowerLaw: {
      if (m.r == 2.0) return m.K;
      if (shear == 0.0) return m.r > 2.0 ? 0.0 : m.K * std::pow(kPowerLawShearFloor, m.r - 2.0);
      return m.K * std::pow(shear, m.r - 2.0);
    }
    case ModelKind::HbRegularized: {
      const double d = shear > 0.0 ? shear : 1e-14;
      return hb_stress_magnitude(m, d) / d;
    }
  }
  return 0.0;
}

double effective_viscosity(const ConstitutiveModel& m, const Mat2& D, double theta) {
  return effective_viscosity(m, frobenius(D), theta);
}

Mat2 stress(const ConstitutiveModel& m, const Mat2& D, double theta) {
  if (!(theta > 0.0)) throw ValidationError("temperature must be positive in the stress law");
  const double d = frobenius(D);
  if (d == 0.0) return Mat2::Zero();
  if (m.kind == ModelKind::HbRegularized) return hb_regularized_solve(m, D, theta);
  return effective_viscosity(m, d, theta) * D;
}

// ---------------------------------------------------------------------------

ConductivityKind parse_conductivity_kind(const std::string& name) {
  if (name == "constant") return ConductivityKind::Constant;
  if (name == "bounded_affine_sqrt") return ConductivityKind::BoundedAffineSqrt;
  throw ValidationError("unknown conductivity kind: " + name);
}

std::string to_string(ConductivityKind kind) {
  return kind == ConductivityKind::Constant ? "constant" : "bounded_affine_sqrt";
}

double ConductivityLaw::upper_bound() const {
  return kind == ConductivityKind::Constant ? c1 : c1 + c2 * cap;
}

void ConductivityLaw::validate() const {
  if (!(c1 > 0.0)) throw ValidationError("conductivity.c1 must be positive");
  if (kind == ConductivityKind::BoundedAffineSqrt) {
    if (!(c2 > 0.0)) throw ValidationError("conductivity.c2 must be positive");
    if (!(cap > 0.0)) throw ValidationError("conductivity.cap must be positive");
  }
}

double conductivity(const ConductivityLaw& law, double theta) {
  if (law.kind == ConductivityKind::Constant) return law.c1;
  return law.c1 + law.c2 * std::min(std::sqrt(std::max(theta, 0.0)), law.cap);
}

// ---------------------------------------------------------------------------

namespace {

struct Sampler {
  std::mt19937_64 rng;
  SamplingBox box;

  Sampler(std::uint64_t seed, const SamplingBox& b) : rng(seed), box(b) {}

  Mat2 tensor() {
    std::uniform_real_distribution<double> u(-box.radius, box.radius);
    const double a = u(rng), b = u(rng);
    Mat2 t;
    t << a, b, b, -a;
    return t;
  }
  double theta() {
    std::uniform_real_distribution<double> u(box.theta_min, box.theta_max);
    return u(rng);
  }
};

}  // namespace

MonotonicityReport check_monotonicity(const ConstitutiveModel& model, int n_samples,
                                      std::uint64_t seed, const SamplingBox& box) {
  if (n_samples < 1) throw ValidationError("n_samples must be >= 1");
  Sampler s(seed, box);
  MonotonicityReport rep;
  rep.samples = n_samples;
  rep.seed = seed;
  rep.min_pairing = std::numeric_limits<double>::infinity();
  rep.strong_mono_constant_est = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const Mat2 t1 = s.tensor(), t2 = s.tensor();
    const double th = s.theta();
    const Mat2 ds = stress(model, t1, th) - stress(model, t2, th);
    const Mat2 dt = t1 - t2;
    const double pairing = ddot(ds, dt);
    rep.min_pairing = std::min(rep.min_pairing, pairing);
    const double denom = ddot(ds, ds) + ddot(dt, dt);
    if (denom > 1e-24) rep.strong_mono_constant_est = std::min(rep.strong_mono_constant_est, pairing / denom);
  }
  return rep;
}

GrowthCoercivityReport check_growth_coercivity(const ConstitutiveModel& model, int n_samples,
                                               std::uint64_t seed, double offset_g,
                                               const SamplingBox& box) {
  if (n_samples < 1) throw ValidationError("n_samples must be >= 1");
  Sampler s(seed, box);
  GrowthCoercivityReport rep;
  rep.samples = n_samples;
  rep.seed = seed;
  rep.offset_g = offset_g;
  rep.coercivity_c_est = std::numeric_limits<double>::infinity();
  const double r = model.r, rp = model.r_prime();
  for (int i = 0; i < n_samples; ++i) {
    const Mat2 t = s.tensor();
    const double th = s.theta();
    const Mat2 S = stress(model, t, th);
    const double nt = frobenius(t), ns = frobenius(S);
    rep.growth_c_est = std::max(rep.growth_c_est, ns / (std::pow(nt, r - 1.0) + 1.0));
    const double denom = std::pow(ns, rp) + std::pow(nt, r);
    if (denom > 0.0) {
      rep.coercivity_c_est = std::min(rep.coercivity_c_est, (ddot(S, t) + offset_g) / denom);
    }
  }
  return rep;
}

LipschitzReport check_theta_lipschitz(const ConstitutiveModel& model, double delta, double R,
                                      int n_samples, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  if (!(R > 0.0)) throw ValidationError("R must be positive");
  if (n_samples < 1) throw ValidationError("n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eta(delta, 1.0 / delta);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.0, R);
  LipschitzReport rep;
  rep.samples = n_samples;
  rep.seed = seed;
  for (int i = 0; i < n_samples; ++i) {
    Mat2 t;
    const double a = comp(rng), b = comp(rng);
    t << a, b, b, -a;
    const double n = frobenius(t);
    if (n > 0.0) t *= radius(rng) / n;
    const double e1 = eta(rng), e2 = eta(rng);
    if (e1 == e2) continue;
    const double diff = frobenius(stress(model, t, e1) - stress(model, t, e2));
    rep.C_est = std::max(rep.C_est, diff / std::abs(e1 - e2));
  }
  return rep;
}

}  // namespace thermoflow
