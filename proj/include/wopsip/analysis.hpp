#ifndef WOPSIP_ANALYSIS_HPP
#define WOPSIP_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wopsip/fespace.hpp"
#include "wopsip/mesh.hpp"

namespace wopsip {

// ---------------------------------------------------------------------------
// Norms and seminorms
// ---------------------------------------------------------------------------

/// Broken H1 seminorm of a scalar CR function.
double norm_broken_h1(const Mesh2D& mesh, const DiscreteFunction& u);
/// Broken H1 seminorm of (u - u_h), using the exact gradient callback.
double norm_broken_h1_error(const Mesh2D& mesh, const ScalarField& u,
                            const DiscreteFunction& u_h);

double norm_l2(const Mesh2D& mesh, const DiscreteFunction& u);
double norm_l2_error(const Mesh2D& mesh, const ScalarField& u,
                     const DiscreteFunction& u_h);

/// Boundary penalty seminorm |v|_beta = (sum_F kappa_{F(beta)} |F| (mean_F v)^2)^{1/2}.
double seminorm_penalty(const Mesh2D& mesh, const DiscreteFunction& v, double beta);
/// Same seminorm of (u - v_h); the mean of u comes from edge quadrature.
double seminorm_penalty_error(const Mesh2D& mesh, const ScalarField& u,
                              const DiscreteFunction& v_h, double beta);

/// |v|_{1,1} = (|v|_{H1(Th)}^2 + |v|_1^2)^{1/2} for a scalar CR function.
double norm_11(const Mesh2D& mesh, const DiscreteFunction& v);
/// |w|_{W_h^CR} = (sum_i |w_i|_{1,1}^2)^{1/2} for a vector CR function.
double norm_W(const Mesh2D& mesh, const DiscreteFunction& w);

// ---------------------------------------------------------------------------
// Error records and rates
// ---------------------------------------------------------------------------

/// One row of a convergence table; rates are filled between consecutive rows
/// with doubled n.
struct ErrorRecord {
  int n = 0;
  double h = 0.0;
  double err_energy = 0.0;
  double err_l2 = 0.0;
  std::optional<double> err_pressure;
  std::optional<double> rate_energy;
  std::optional<double> rate_l2;
  std::optional<double> rate_pressure;
  bool solver_ok = true;
};

/// Relative errors of a Stokes solution against exact fields. Numerators and
/// denominators are accumulated in one quadrature pass per element:
///   Err(W)  = |u - u_N|_{W_h^CR} / |u|_{W_h^CR}   (broken H1 part of the norm)
///   Err(L2) = ||u - u_N|| / ||u||
///   Err(Q)  = ||p - p_N|| / ||p||.
/// Throws std::domain_error on a vanishing denominator.
ErrorRecord relative_errors(const Mesh2D& mesh, const VectorField& exact_u,
                            const ScalarField& exact_p, const DiscreteFunction& u_h,
                            const DiscreteFunction& p_h);

/// Scalar (Poisson) analogue: energy column is the relative |.|_{1,1} error.
ErrorRecord relative_errors_scalar(const Mesh2D& mesh, const ScalarField& exact,
                                   const DiscreteFunction& u_h);

/// r = log(e_N / e_2N) / log 2. Throws std::domain_error unless both are > 0.
double convergence_rate(double e_coarse, double e_fine);

/// Least-squares slope of log(err) against log(h).
double fitted_rate(const std::vector<double>& h, const std::vector<double>& err);

// ---------------------------------------------------------------------------
// Structural identities and anisotropy diagnostics
// ---------------------------------------------------------------------------

/// Residual of the RT-CR duality identity
///   int(I_h^RT w . grad_h psi_h + div I_h^RT w psi_h) dx
///     - sum_{boundary F} int_F (w . n_F) mean_F psi_h ds,
/// which vanishes to quadrature accuracy.
double lemma1_residual(const Mesh2D& mesh, const VectorField& w,
                       const DiscreteFunction& psi_h);

struct AnisotropicBound {
  double directional = 0.0;     // (sum_i sum_T h_i^2 ||d(grad u)/d r_i||^2)^{1/2}
  double laplacian = 0.0;       // h ||lap u||
  double boundary = 0.0;        // h |u|_{H1} + h^{3/2} |u|_{H1}^{1/2} ||lap u||^{1/2}
  double total() const { return directional + laplacian + boundary; }
};

/// Evaluates the energy-error bound of the scheme for a smooth u. Second
/// derivatives come from the Hessian callback when present, otherwise from
/// central differences of the gradient (step 1e-5).
AnisotropicBound anisotropic_bound(const Mesh2D& mesh, const ScalarField& u);

// ---------------------------------------------------------------------------
// Table output
// ---------------------------------------------------------------------------

/// CSV columns: N,h,Err(W),r,Err(L2),r,Err(Q),r with 6 significant digits;
/// rate cells of the first row (and the whole Q block for Poisson) are empty.
std::string to_csv(const std::vector<ErrorRecord>& records);
std::vector<ErrorRecord> parse_csv(const std::string& text);
std::string to_markdown(const std::vector<ErrorRecord>& records);

}  // namespace wopsip

#endif
