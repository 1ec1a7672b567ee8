#ifndef WOPSIP_POISSON_HPP
#define WOPSIP_POISSON_HPP

#include <optional>
#include <utility>

#include "wopsip/fespace.hpp"
#include "wopsip/linalg.hpp"
#include "wopsip/mesh.hpp"

namespace wopsip {

/// Boundary penalty kappa_{F(beta)} = h^{-2 beta} / ell_{T,F} on a boundary
/// edge, with h the global mesh size and ell_{T,F} = 2|T|/|F| of the adjacent
/// element. Throws for interior edges.
double penalty_kappa(const Mesh2D& mesh, int edge, double beta);

/// -Laplace(u) = f in (0,1)^2, u = g on the boundary.
struct PoissonProblem {
  const Mesh2D* mesh = nullptr;
  ScalarField f;
  ScalarField g;
  std::optional<ScalarField> exact;  // with gradient, for error reporting
};

struct PoissonSystem {
  SparseSym A;            // CR stiffness + boundary mean penalty
  std::vector<double> b;  // load + penalised boundary means of g
};

/// Weakly over-penalised Nitsche bilinear form over CR dofs:
///   A = sum_T (grad u_h, grad v_h)_T
///     + sum_{boundary F} kappa_{F(1)} |F| (mean_F u_h)(mean_F v_h).
/// The boundary data enters the load purely through edge means of g.
PoissonSystem assemble_poisson(const PoissonProblem& problem);

std::pair<DiscreteFunction, SolveReport> solve_poisson(const PoissonProblem& problem,
                                                       double tol = 1e-12);

/// f = -Laplace(u) from the Laplacian callback; the boundary data of the
/// manufactured problem is u itself. Throws when the callback is missing.
ScalarField manufacture_poisson_rhs(const ScalarField& u);

PoissonProblem make_manufactured_poisson(const Mesh2D& mesh, const ScalarField& u);

}  // namespace wopsip

#endif
