#ifndef WOPSIP_STOKES_HPP
#define WOPSIP_STOKES_HPP

#include <optional>
#include <string>

#include "wopsip/fespace.hpp"
#include "wopsip/linalg.hpp"
#include "wopsip/mesh.hpp"

namespace wopsip {

/// `Robust` tests the load against the divergence-conforming RT0 image of
/// the velocity test functions; `Plain` tests against the CR functions
/// themselves and is not pressure-robust.
enum class StokesVariant { Robust, Plain };

const char* to_string(StokesVariant variant);
StokesVariant stokes_variant_from_string(const std::string& name);

/// -nu Laplace(u) + grad p = f, div u = 0 in (0,1)^2, u = g on the boundary,
/// with int_boundary g . n = 0.
struct StokesProblem {
  const Mesh2D* mesh = nullptr;
  double nu = 1.0;
  double eta = 1.0;  // penalty scale inside the velocity form
  VectorField f;
  VectorField g;
  std::optional<VectorField> exact_u;
  std::optional<ScalarField> exact_p;
  StokesVariant variant = StokesVariant::Robust;
};

struct StokesSystem {
  // Scalar per-component block nu * (CR stiffness + eta * penalty); the full
  // velocity operator is block diagonal with one copy per component.
  SparseSym M;
  SparseRect B;  // B(v, q) = -(div_h v, q) over component-major velocity dofs
  std::vector<double> rhs;
  std::vector<double> areas;  // element areas (pressure weights)

  /// v^T (blockdiag M) v for a component-major velocity vector.
  double velocity_form(const std::vector<double>& v) const;
  std::vector<double> velocity_multiply(const std::vector<double>& v) const;
};

/// Assembles the block system. The two velocity components share one scalar
/// block; the penalty uses kappa_{F(1)} with the global h. Throws when the
/// boundary data violates the compatibility condition int g . n = 0.
StokesSystem assemble_stokes(const StokesProblem& problem);

struct StokesSolution {
  DiscreteFunction u;  // vector CR
  DiscreteFunction p;  // elementwise constant, zero area-weighted mean
  SaddleSolution report;
};

StokesSolution solve_stokes(const StokesProblem& problem, double tol = 1e-10,
                            double tol_inner = 1e-12);

/// f = -nu Laplace(u) + grad p componentwise; requires Laplacian callbacks on
/// u and a gradient callback on p.
VectorField manufacture_stokes_rhs(const VectorField& u, const ScalarField& p, double nu);

enum class StokesExample { Example1, Example2 };

StokesExample stokes_example_from_string(const std::string& name);

/// Exact fields of the two reference experiments:
/// Example1: u = (sin pi x cos pi y, -cos pi x sin pi y), p = sin pi x cos pi y.
/// Example2: u = (-(y - 1/2), x - 1/2), p = 1e5 (1 - y)^3 - 1e5 / 4.
StokesProblem example_catalog(StokesExample example, const Mesh2D& mesh, double nu,
                              double eta, StokesVariant variant = StokesVariant::Robust);

}  // namespace wopsip

#endif
