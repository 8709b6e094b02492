#include "thermoflow/linear_solver.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace thermoflow {

struct SparseDirectSolver::Impl {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  bool ready = false;
  // Pattern of the last analysed matrix; the symbolic step is skipped when
  // the next matrix has the same one.
  std::vector<int> outer;
  std::vector<int> inner;

  bool same_pattern(const SparseMatrix& m) const {
    if (outer.empty() || static_cast<Eigen::Index>(outer.size()) != m.outerSize() + 1 ||
        static_cast<Eigen::Index>(inner.size()) != m.nonZeros()) {
      return false;
    }
    return std::equal(outer.begin(), outer.end(), m.outerIndexPtr()) &&
           std::equal(inner.begin(), inner.end(), m.innerIndexPtr());
  }
};

SparseDirectSolver::SparseDirectSolver() : impl_(std::make_unique<Impl>()) {}
SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver&&) noexcept = default;
SparseDirectSolver& SparseDirectSolver::operator=(SparseDirectSolver&&) noexcept = default;

void SparseDirectSolver::factorize(const SparseMatrix& input) {
  impl_->ready = false;
  SparseMatrix matrix = input;
  matrix.makeCompressed();
  if (!impl_->same_pattern(matrix)) {
    impl_->lu.analyzePattern(matrix);
    impl_->outer.assign(matrix.outerIndexPtr(), matrix.outerIndexPtr() + matrix.outerSize() + 1);
    impl_->inner.assign(matrix.innerIndexPtr(), matrix.innerIndexPtr() + matrix.nonZeros());
  }
  impl_->lu.factorize(matrix);
  if (impl_->lu.info() != Eigen::Success) {
    impl_->outer.clear();
    throw LinearSolveFailed("sparse LU factorization failed: " + impl_->lu.lastErrorMessage() +
                            " (n = " + std::to_string(matrix.rows()) + ")");
  }
  impl_->ready = true;
}

Vector SparseDirectSolver::solve(const Vector& rhs) const {
  if (!impl_->ready) throw LinearSolveFailed("solve called before a successful factorization");
  Vector x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success || !x.allFinite()) {
    throw LinearSolveFailed("sparse LU solve failed");
  }
  return x;
}

Vector solve_sparse(const SparseMatrix& matrix, const Vector& rhs) {
  SparseDirectSolver solver;
  solver.factorize(matrix);
  return solver.solve(rhs);
}

}  // namespace thermoflow
