#ifndef WOPSIP_DENSE_HPP
#define WOPSIP_DENSE_HPP

#include <vector>

#include "wopsip/linalg.hpp"

namespace wopsip {

/// Row-major dense matrix for small oracle computations (dimension <= a few
/// hundred): factorization-based solves and symmetric eigenvalues, kept
/// independent of the iterative solvers they check.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) {
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix to_dense(const SparseSym& A);
DenseMatrix to_dense(const SparseRect& B);

/// Gaussian elimination with partial pivoting; throws on singular input.
std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b);

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi method,
/// returned in ascending order.
std::vector<double> symmetric_eigenvalues(DenseMatrix A);

}  // namespace wopsip

#endif
