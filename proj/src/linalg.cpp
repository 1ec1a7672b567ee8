#include "wopsip/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wopsip {

namespace {

struct CsrData {
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;
};

CsrData compress(int rows, int cols, std::vector<Triplet>& triplets) {
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::out_of_range("sparse assembly: triplet index out of range");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrData out;
  out.row_ptr.assign(static_cast<size_t>(rows) + 1, 0);
  for (size_t k = 0; k < triplets.size();) {
    size_t j = k;
    double sum = 0.0;
    while (j < triplets.size() && triplets[j].row == triplets[k].row &&
           triplets[j].col == triplets[k].col)
      sum += triplets[j++].value;
    out.col.push_back(triplets[k].col);
    out.val.push_back(sum);
    out.row_ptr[static_cast<size_t>(triplets[k].row) + 1] = static_cast<int>(out.col.size());
    k = j;
  }
  for (size_t r = 1; r < out.row_ptr.size(); ++r)
    out.row_ptr[r] = std::max(out.row_ptr[r], out.row_ptr[r - 1]);
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SparseSym SparseSym::from_triplets(int dim, std::vector<Triplet> triplets) {
  SparseSym m;
  m.dim_ = dim;
  CsrData data = compress(dim, dim, triplets);
  m.row_ptr_ = std::move(data.row_ptr);
  m.col_ = std::move(data.col);
  m.val_ = std::move(data.val);
  return m;
}

void SparseSym::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(static_cast<size_t>(dim_), 0.0);
  for (int r = 0; r < dim_; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k)
      sum += val_[static_cast<size_t>(k)] * x[static_cast<size_t>(col_[static_cast<size_t>(k)])];
    y[static_cast<size_t>(r)] = sum;
  }
}

std::vector<double> SparseSym::multiply(const std::vector<double>& x) const {
  std::vector<double> y;
  multiply(x, y);
  return y;
}

double SparseSym::quadratic_form(const std::vector<double>& x) const {
  double total = 0.0;
  for (int r = 0; r < dim_; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k)
      sum += val_[static_cast<size_t>(k)] * x[static_cast<size_t>(col_[static_cast<size_t>(k)])];
    total += x[static_cast<size_t>(r)] * sum;
  }
  return total;
}

SparseRect SparseRect::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  SparseRect m;
  m.rows_ = rows;
  m.cols_ = cols;
  CsrData data = compress(rows, cols, triplets);
  m.row_ptr_ = std::move(data.row_ptr);
  m.col_ = std::move(data.col);
  m.val_ = std::move(data.val);
  return m;
}

std::vector<double> SparseRect::multiply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<size_t>(rows_), 0.0);
  for (int r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k)
      sum += val_[static_cast<size_t>(k)] * x[static_cast<size_t>(col_[static_cast<size_t>(k)])];
    y[static_cast<size_t>(r)] = sum;
  }
  return y;
}

std::vector<double> SparseRect::multiply_transpose(const std::vector<double>& y) const {
  std::vector<double> x(static_cast<size_t>(cols_), 0.0);
  for (int r = 0; r < rows_; ++r) {
    const double yr = y[static_cast<size_t>(r)];
    for (int k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k)
      x[static_cast<size_t>(col_[static_cast<size_t>(k)])] += val_[static_cast<size_t>(k)] * yr;
  }
  return x;
}

SolveReport cg(const SparseSym& A, const std::vector<double>& b,
               std::vector<double>& x, double tol, int maxit,
               std::vector<double>* energy_trace) {
  const int n = A.dim();
  if (x.size() != static_cast<size_t>(n)) x.assign(static_cast<size_t>(n), 0.0);
  SolveReport report;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    x.assign(static_cast<size_t>(n), 0.0);
    report.converged = true;
    return report;
  }

  std::vector<double> r(static_cast<size_t>(n));
  std::vector<double> Ax = A.multiply(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - Ax[i];
  std::vector<double> p = r;
  std::vector<double> Ap(static_cast<size_t>(n));
  double rr = dot(r, r);

  const double threshold = tol * bnorm;
  for (int it = 0; it < maxit && std::sqrt(rr) > threshold; ++it) {
    A.multiply(p, Ap);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) break;  // loss of positive definiteness
    const double alpha = rr / pAp;
    for (size_t i = 0; i < x.size(); ++i) x[i] += alpha * p[i];
    for (size_t i = 0; i < r.size(); ++i) r[i] -= alpha * Ap[i];
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    ++report.iterations;
    if (energy_trace != nullptr) {
      Ax = A.multiply(x);
      energy_trace->push_back(0.5 * dot(x, Ax) - dot(b, x));
    }
  }

  Ax = A.multiply(x);
  double res = 0.0;
  for (size_t i = 0; i < r.size(); ++i) {
    const double d = b[i] - Ax[i];
    res += d * d;
  }
  report.relative_residual = std::sqrt(res) / bnorm;
  report.converged = report.relative_residual <= tol;
  return report;
}

void project_zero_mean(std::vector<double>& p, const std::vector<double>& weights) {
  double total = 0.0, weighted = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    total += weights[i];
    weighted += weights[i] * p[i];
  }
  const double mean = weighted / total;
  for (double& v : p) v -= mean;
}

namespace {

// Euclidean-orthogonal projection onto {q : w^T q = 0}; keeps the outer CG
// operator symmetric on the zero-mean subspace.
void project_orthogonal(std::vector<double>& q, const std::vector<double>& w,
                        double ww) {
  const double c = dot(q, w) / ww;
  for (size_t i = 0; i < q.size(); ++i) q[i] -= c * w[i];
}

}  // namespace

SaddleSolution solve_saddle(const SparseSym& A, const SparseRect& B,
                            const std::vector<double>& f,
                            const std::vector<double>& g,
                            const std::vector<double>& weights, double tol,
                            double tol_inner, int maxit, int components) {
  if (tol_inner <= 0.0) tol_inner = tol / 10.0;
  const int nu = components * A.dim();
  const int np = B.rows();
  if (maxit <= 0) maxit = 50 * std::max(nu, 1);

  SaddleSolution sol;
  sol.u.assign(static_cast<size_t>(nu), 0.0);
  sol.p.assign(static_cast<size_t>(np), 0.0);

  // Inner solve with the block-diagonal velocity matrix, one CG per
  // component (each component gets its own Krylov space).
  const int nc = A.dim();
  const auto inner_solve = [&](const std::vector<double>& rhs, std::vector<double>& x) {
    for (int c = 0; c < components; ++c) {
      std::vector<double> rc(rhs.begin() + c * nc, rhs.begin() + (c + 1) * nc);
      std::vector<double> xc(x.begin() + c * nc, x.begin() + (c + 1) * nc);
      const SolveReport rep = cg(A, rc, xc, tol_inner, maxit);
      sol.inner_iterations_total += rep.iterations;
      std::copy(xc.begin(), xc.end(), x.begin() + c * nc);
    }
  };
  const auto block_multiply = [&](const std::vector<double>& x) {
    std::vector<double> y(static_cast<size_t>(nu));
    std::vector<double> yc;
    for (int c = 0; c < components; ++c) {
      const std::vector<double> xc(x.begin() + c * nc, x.begin() + (c + 1) * nc);
      A.multiply(xc, yc);
      std::copy(yc.begin(), yc.end(), y.begin() + c * nc);
    }
    return y;
  };

  if (np == 0) {
    inner_solve(f, sol.u);
    const std::vector<double> Au = block_multiply(sol.u);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < Au.size(); ++i) {
      const double d = f[i] - Au[i];
      num += d * d;
      den += f[i] * f[i];
    }
    sol.residual_momentum = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    sol.outer.converged = sol.residual_momentum <= tol_inner;
    sol.converged = sol.outer.converged;
    return sol;
  }

  const double ww = dot(weights, weights);
  const auto apply_schur = [&](const std::vector<double>& q,
                               std::vector<double>& z_scratch) {
    std::vector<double> rhs = B.multiply_transpose(q);
    inner_solve(rhs, z_scratch);
    std::vector<double> Sq = B.multiply(z_scratch);
    project_orthogonal(Sq, weights, ww);
    return Sq;
  };

  // Right-hand side of the Schur system: P (B A^{-1} f - g).
  std::vector<double> z0(static_cast<size_t>(nu), 0.0);
  inner_solve(f, z0);
  std::vector<double> rhs_p = B.multiply(z0);
  for (size_t i = 0; i < rhs_p.size(); ++i) rhs_p[i] -= g[i];
  project_orthogonal(rhs_p, weights, ww);

  // Conjugate gradients on the projected Schur complement.
  const double rhs_norm = norm2(rhs_p);
  std::vector<double> z_scratch(static_cast<size_t>(nu), 0.0);
  if (rhs_norm > 0.0) {
    std::vector<double> r = rhs_p;  // p starts at zero
    std::vector<double> d = r;
    double rr = dot(r, r);
    const double threshold = tol * rhs_norm;
    while (sol.outer.iterations < maxit && std::sqrt(rr) > threshold) {
      z_scratch.assign(static_cast<size_t>(nu), 0.0);
      const std::vector<double> Sd = apply_schur(d, z_scratch);
      const double dSd = dot(d, Sd);
      if (dSd <= 0.0) break;
      const double alpha = rr / dSd;
      for (size_t i = 0; i < sol.p.size(); ++i) sol.p[i] += alpha * d[i];
      for (size_t i = 0; i < r.size(); ++i) r[i] -= alpha * Sd[i];
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
      ++sol.outer.iterations;
    }
    sol.outer.relative_residual = std::sqrt(rr) / rhs_norm;
    sol.outer.converged = sol.outer.relative_residual <= tol;
  } else {
    sol.outer.converged = true;
  }
  project_orthogonal(sol.p, weights, ww);

  // Recover the velocity: A u = f - B^T p.
  std::vector<double> rhs_u = B.multiply_transpose(sol.p);
  for (size_t i = 0; i < rhs_u.size(); ++i) rhs_u[i] = f[i] - rhs_u[i];
  sol.u = z0;  // warm start from A^{-1} f
  inner_solve(rhs_u, sol.u);

  // Block residuals of the full system.
  {
    std::vector<double> res = block_multiply(sol.u);
    const std::vector<double> Btp = B.multiply_transpose(sol.p);
    double num = 0.0;
    for (size_t i = 0; i < res.size(); ++i) {
      const double d = f[i] - res[i] - Btp[i];
      num += d * d;
    }
    const double fn = norm2(f);
    sol.residual_momentum = fn > 0.0 ? std::sqrt(num) / fn : std::sqrt(num);
    std::vector<double> cons = B.multiply(sol.u);
    for (size_t i = 0; i < cons.size(); ++i) cons[i] -= g[i];
    project_orthogonal(cons, weights, ww);
    sol.residual_constraint = norm2(cons);
  }
  sol.converged = sol.outer.converged;
  return sol;
}

}  // namespace wopsip
