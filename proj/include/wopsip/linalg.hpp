#ifndef WOPSIP_LINALG_HPP
#define WOPSIP_LINALG_HPP

#include <vector>

namespace wopsip {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed-row square matrix assembled from triplets. Duplicate entries
/// are summed; the caller is responsible for inserting a structurally
/// symmetric pattern (assembly of symmetric forms does so naturally).
class SparseSym {
 public:
  SparseSym() = default;
  static SparseSym from_triplets(int dim, std::vector<Triplet> triplets);

  int dim() const { return dim_; }
  int nonzeros() const { return static_cast<int>(val_.size()); }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  /// x^T A x with a fixed summation order.
  double quadratic_form(const std::vector<double>& x) const;

  /// Row access for oracles and densification in tests.
  int row_begin(int r) const { return row_ptr_[static_cast<size_t>(r)]; }
  int row_end(int r) const { return row_ptr_[static_cast<size_t>(r) + 1]; }
  int col(int k) const { return col_[static_cast<size_t>(k)]; }
  double value(int k) const { return val_[static_cast<size_t>(k)]; }

 private:
  int dim_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_;
  std::vector<double> val_;
};

/// Rectangular compressed-row matrix (the divergence block).
class SparseRect {
 public:
  SparseRect() = default;
  static SparseRect from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transpose(const std::vector<double>& y) const;

  int row_begin(int r) const { return row_ptr_[static_cast<size_t>(r)]; }
  int row_end(int r) const { return row_ptr_[static_cast<size_t>(r) + 1]; }
  int col(int k) const { return col_[static_cast<size_t>(k)]; }
  double value(int k) const { return val_[static_cast<size_t>(k)]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_;
  std::vector<double> val_;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Unpreconditioned conjugate gradients. `x` provides the initial guess and
/// receives the solution; convergence is ||b - Ax|| <= tol ||b||. When
/// `energy_trace` is given it records the quadratic objective
/// x^T A x / 2 - b^T x once per iteration (monotone for exact CG).
SolveReport cg(const SparseSym& A, const std::vector<double>& b,
               std::vector<double>& x, double tol, int maxit,
               std::vector<double>* energy_trace = nullptr);

/// Subtract the weight-averaged mean so that sum_i w_i p_i = 0.
void project_zero_mean(std::vector<double>& p, const std::vector<double>& weights);

struct SaddleSolution {
  std::vector<double> u;
  std::vector<double> p;
  SolveReport outer;
  int inner_iterations_total = 0;
  double residual_momentum = 0.0;    // ||f - A u - B^T p|| / ||f||
  double residual_constraint = 0.0;  // ||P (B u - g)||, P = zero-mean projection
  bool converged = false;
};

/// Schur-complement (Uzawa) solve of
///     A u + B^T p = f,   B u = g   (tested against zero-mean pressures),
/// with A symmetric positive definite. Outer conjugate gradients act on
/// S = B A^{-1} B^T restricted to the zero-mean subspace defined by
/// `weights` (element areas); every application of S solves with A by inner
/// conjugate gradients at tolerance `tol_inner`. The returned pressure has
/// zero weighted mean. An empty pressure space reduces to cg on A.
///
/// When `components` > 1 the velocity block is block diagonal with
/// `components` copies of A, velocity vectors are component-major of length
/// components * A.dim(), and the inner solves run per component.
SaddleSolution solve_saddle(const SparseSym& A, const SparseRect& B,
                            const std::vector<double>& f,
                            const std::vector<double>& g,
                            const std::vector<double>& weights, double tol,
                            double tol_inner = 0.0, int maxit = 0,
                            int components = 1);

}  // namespace wopsip

#endif
