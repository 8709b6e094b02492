#pragma once

#include <memory>

#include "thermoflow/types.hpp"

namespace thermoflow {

/// Sparse LU (Eigen SparseLU, COLAMD ordering) behind a small interface.
class SparseDirectSolver {
 public:
  SparseDirectSolver();
  ~SparseDirectSolver();
  SparseDirectSolver(SparseDirectSolver&&) noexcept;
  SparseDirectSolver& operator=(SparseDirectSolver&&) noexcept;

  void factorize(const SparseMatrix& matrix);
  Vector solve(const Vector& rhs) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Vector solve_sparse(const SparseMatrix& matrix, const Vector& rhs);

}  // namespace thermoflow
