#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace thermoflow {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

using ScalarFunction = std::function<double(const Vec2&)>;
using VectorFunction = std::function<Vec2(const Vec2&)>;
using TimeScalarFunction = std::function<double(double, const Vec2&)>;
using TimeVectorFunction = std::function<Vec2(double, const Vec2&)>;

// Input violated a documented domain (bad config value, bad mesh, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical solve did not produce an acceptable answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LinearSolveFailed : public SolverError {
 public:
  using SolverError::SolverError;
};

class PicardDiverged : public SolverError {
 public:
  PicardDiverged(const std::string& what, int iterations, double last_residual)
      : SolverError(what), iterations_(iterations), last_residual_(last_residual) {}
  int iterations() const { return iterations_; }
  double last_residual() const { return last_residual_; }

 private:
  int iterations_;
  double last_residual_;
};

// Frobenius inner product and norm, |A|^2 = A:A.
inline double ddot(const Mat2& a, const Mat2& b) { return (a.array() * b.array()).sum(); }
inline double frobenius(const Mat2& a) { return std::sqrt(ddot(a, a)); }

}  // namespace thermoflow
