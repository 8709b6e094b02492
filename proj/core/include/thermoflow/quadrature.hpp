#pragma once

#include <array>
#include <vector>

namespace thermoflow {

/// Quadrature on the reference triangle (0,0),(1,0),(0,1).
/// Points are barycentric (l0, l1, l2) with reference coordinates (l1, l2).
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;  // sum to 1/2
  int exact_degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Rule exact for polynomials of total degree `degree`, 1 <= degree <= 8.
/// Degrees 1 and 2 are the centroid and three-point edge-interior rules;
/// higher degrees use a collapsed Gauss-Legendre product rule.
const QuadratureRule& quadrature_rule(int degree);

/// n-point Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace thermoflow
