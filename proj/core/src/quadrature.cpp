#include "thermoflow/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "thermoflow/types.hpp"

namespace thermoflow {

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // map [-1,1] -> [0,1]
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

QuadratureRule collapsed_gauss(int degree) {
  const int n = (degree + 3) / 2;  // 2n - 1 >= degree + 1
  std::vector<double> x, w;
  gauss_legendre_unit(n, x, w);
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xi = x[i];
      const double eta = x[j] * (1.0 - x[i]);
      rule.points.push_back({1.0 - xi - eta, xi, eta});
      rule.weights.push_back(w[i] * w[j] * (1.0 - x[i]));
    }
  }
  return rule;
}

QuadratureRule make_rule(int degree) {
  if (degree == 1) {
    return QuadratureRule{{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {0.5}, 1};
  }
  if (degree == 2) {
    const double a = 1.0 / 6.0, b = 2.0 / 3.0;
    return QuadratureRule{{{b, a, a}, {a, b, a}, {a, a, b}}, {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}, 2};
  }
  return collapsed_gauss(degree);
}

}  // namespace

const QuadratureRule& quadrature_rule(int degree) {
  if (degree < 1 || degree > 8) {
    throw ValidationError("quadrature degree must lie in [1, 8], got " + std::to_string(degree));
  }
  static const std::array<QuadratureRule, 8> rules = [] {
    std::array<QuadratureRule, 8> r;
    for (int d = 1; d <= 8; ++d) r[d - 1] = make_rule(d);
    return r;
  }();
  return rules[degree - 1];
}

}  // namespace thermoflow
