#include "wopsip/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wopsip {

DenseMatrix to_dense(const SparseSym& A) {
  DenseMatrix m(A.dim(), A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (int k = A.row_begin(r); k < A.row_end(r); ++k)
      m(r, A.col(k)) += A.value(k);
  return m;
}

DenseMatrix to_dense(const SparseRect& B) {
  DenseMatrix m(B.rows(), B.cols());
  for (int r = 0; r < B.rows(); ++r)
    for (int k = B.row_begin(r); k < B.row_end(r); ++k)
      m(r, B.col(k)) += B.value(k);
  return m;
}

std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b) {
  const int n = A.rows();
  if (A.cols() != n || b.size() != static_cast<size_t>(n))
    throw std::invalid_argument("dense_solve: shape mismatch");
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(A(r, k)) > std::abs(A(pivot, k))) pivot = r;
    if (A(pivot, k) == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(A(k, c), A(pivot, c));
      std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(pivot)]);
    }
    for (int r = k + 1; r < n; ++r) {
      const double factor = A(r, k) / A(k, k);
      if (factor == 0.0) continue;
      for (int c = k; c < n; ++c) A(r, c) -= factor * A(k, c);
      b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(k)];
    }
  }
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double sum = b[static_cast<size_t>(r)];
    for (int c = r + 1; c < n; ++c) sum -= A(r, c) * x[static_cast<size_t>(c)];
    x[static_cast<size_t>(r)] = sum / A(r, r);
  }
  return x;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix A) {
  const int n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("symmetric_eigenvalues: not square");

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-28 * static_cast<double>(n) * static_cast<double>(n)) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = A(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace wopsip
