#pragma once

#include <cstdint>
#include <string>

#include "thermoflow/types.hpp"

namespace thermoflow {

enum class ModelKind { CarreauYasuda, PowerLaw, HbRegularized };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

/// c(s) = base + amplitude * s+/(1 + s+), so base <= c(s) <= base + amplitude
/// for every real s. Lipschitz in s with constant `amplitude`.
struct SaturatingCoefficient {
  double base = 1.0;
  double amplitude = 0.0;

  double operator()(double s) const;
  double lower() const { return base; }
  double upper() const { return base + amplitude; }
};

/// Stress law S = S(D, theta) on symmetric traceless 2x2 tensors.
///
///   carreau_yasuda  S = alpha(theta) D + beta(theta) (1 + Gamma(theta)|D|^2)^((r-2)/2) D
///   power_law       S = K |D|^(r-2) D
///   hb_regularized  Herschel-Bulkley graph G(S - eps D, D - eps S) = 0 with
///                   G(S, D) = (|S| - tau_y)+ S - K |D|^(r-2) (tau_y + (|S| - tau_y)+) D
struct ConstitutiveModel {
  ModelKind kind = ModelKind::PowerLaw;
  double r = 2.0;
  SaturatingCoefficient alpha{1.0, 0.0};
  SaturatingCoefficient beta{1.0, 0.0};
  SaturatingCoefficient gamma{1.0, 0.0};
  double K = 1.0;
  double tau_y = 0.0;
  double eps_reg = 0.1;

  static ConstitutiveModel power_law(double r, double K);
  static ConstitutiveModel carreau_yasuda(double r, SaturatingCoefficient alpha,
                                          SaturatingCoefficient beta, SaturatingCoefficient gamma);
  static ConstitutiveModel hb_regularized(double r, double K, double tau_y, double eps_reg);

  double r_prime() const { return r / (r - 1.0); }
  bool depends_on_temperature() const;
  void validate() const;
};

/// Throws ValidationError for theta <= 0.
Mat2 stress(const ConstitutiveModel& model, const Mat2& D, double theta);

/// nu with stress(D) = nu * D. For the shear-thinning power law the value at
/// D = 0 is taken at |D| = 1e-8 (any finite value reproduces S(0) = 0).
double effective_viscosity(const ConstitutiveModel& model, const Mat2& D, double theta);
double effective_viscosity(const ConstitutiveModel& model, double shear, double theta);

/// Stress magnitude s(|D|) of the regularised Herschel-Bulkley law, solved by
/// safeguarded Newton with bisection fallback (tol 1e-12, 100 iterations).
double hb_stress_magnitude(const ConstitutiveModel& model, double shear);
Mat2 hb_regularized_solve(const ConstitutiveModel& model, const Mat2& D, double theta);
/// |G(S - eps D, D - eps S)| for the model's graph.
double hb_implicit_residual(const ConstitutiveModel& model, const Mat2& S, const Mat2& D);

enum class ConductivityKind { Constant, BoundedAffineSqrt };

ConductivityKind parse_conductivity_kind(const std::string& name);
std::string to_string(ConductivityKind kind);

/// constant:            kappa = c1
/// bounded_affine_sqrt: kappa = c1 + c2 * min(sqrt(max(theta, 0)), cap)
struct ConductivityLaw {
  ConductivityKind kind = ConductivityKind::Constant;
  double c1 = 1.0;
  double c2 = 1.0;
  double cap = 10.0;

  static ConductivityLaw constant(double c) { return {ConductivityKind::Constant, c, 0.0, 0.0}; }
  double upper_bound() const;
  void validate() const;
};

double conductivity(const ConductivityLaw& law, double theta);

// Randomised property checkers. Tensors are sampled as [[a, b], [b, -a]]
// with a, b uniform in [-radius, radius]; temperatures uniform in
// [theta_min, theta_max].
struct SamplingBox {
  double radius = 10.0;
  double theta_min = 0.1;
  double theta_max = 10.0;
};

struct MonotonicityReport {
  double min_pairing = 0.0;
  double strong_mono_constant_est = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

MonotonicityReport check_monotonicity(const ConstitutiveModel& model, int n_samples,
                                      std::uint64_t seed, const SamplingBox& box = {});

struct GrowthCoercivityReport {
  double growth_c_est = 0.0;
  double coercivity_c_est = 0.0;
  double offset_g = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

GrowthCoercivityReport check_growth_coercivity(const ConstitutiveModel& model, int n_samples,
                                               std::uint64_t seed, double offset_g = 1.0,
                                               const SamplingBox& box = {});

struct LipschitzReport {
  double C_est = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

LipschitzReport check_theta_lipschitz(const ConstitutiveModel& model, double delta, double R,
                                      int n_samples, std::uint64_t seed);

}  // namespace thermoflow
