#include "wopsip/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "wopsip/quadrature.hpp"

namespace wopsip {

double penalty_kappa(const Mesh2D& mesh, int edge, double beta) {
  const Edge& e = mesh.edges[static_cast<size_t>(edge)];
  if (!e.boundary)
    throw std::invalid_argument("penalty_kappa: defined on boundary edges only");
  const int t = e.tri[0];
  int local = -1;
  for (int k = 0; k < 3; ++k)
    if (mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)] == edge) local = k;
  const double ell = mesh.geometry[static_cast<size_t>(t)].ell[static_cast<size_t>(local)];
  return std::pow(mesh.h, -2.0 * beta) / ell;
}

PoissonSystem assemble_poisson(const PoissonProblem& problem) {
  const Mesh2D& mesh = *problem.mesh;
  const int ne = mesh.n_edges();

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(9 * mesh.n_triangles() + ne));
  std::vector<double> b(static_cast<size_t>(ne), 0.0);

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto grads = cr_basis_gradients(mesh, t);
    const double area = mesh.geometry[static_cast<size_t>(t)].area;
    const auto& edges = mesh.tri_edge[static_cast<size_t>(t)];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.push_back({edges[static_cast<size_t>(i)], edges[static_cast<size_t>(j)],
                            area * dot(grads[static_cast<size_t>(i)],
                                       grads[static_cast<size_t>(j)])});

    const Point2 p0 = mesh.vertex_of(t, 0);
    const Point2 p1 = mesh.vertex_of(t, 1);
    const Point2 p2 = mesh.vertex_of(t, 2);
    for (int k = 0; k < 3; ++k)
      b[static_cast<size_t>(edges[static_cast<size_t>(k)])] +=
          integrate_triangle(p0, p1, p2, [&](Point2 x) {
            return problem.f.value(x) * cr_basis_value(mesh, t, k, x);
          });
  }

  // Boundary means of CR functions coincide with the edge dof, so the
  // penalty block is diagonal on boundary dofs.
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const double kappa = penalty_kappa(mesh, e, 1.0);
    triplets.push_back({e, e, kappa * edge.length});
    const double g_mean = edge_mean(mesh.vertices[static_cast<size_t>(edge.v[0])],
                                    mesh.vertices[static_cast<size_t>(edge.v[1])],
                                    problem.g.value);
    b[static_cast<size_t>(e)] += kappa * edge.length * g_mean;
  }

  PoissonSystem sys;
  sys.A = SparseSym::from_triplets(ne, std::move(triplets));
  sys.b = std::move(b);
  return sys;
}

std::pair<DiscreteFunction, SolveReport> solve_poisson(const PoissonProblem& problem,
                                                       double tol) {
  const PoissonSystem sys = assemble_poisson(problem);
  DiscreteFunction u = zero_function(*problem.mesh, Space::CRScalar);
  const SolveReport report =
      cg(sys.A, sys.b, u.coeffs, tol, 50 * std::max(sys.A.dim(), 1));
  return {std::move(u), report};
}

ScalarField manufacture_poisson_rhs(const ScalarField& u) {
  if (!u.laplacian)
    throw std::invalid_argument("manufacture_poisson_rhs: Laplacian callback missing");
  ScalarField f;
  f.value = [lap = u.laplacian](Point2 x) { return -lap(x); };
  return f;
}

PoissonProblem make_manufactured_poisson(const Mesh2D& mesh, const ScalarField& u) {
  PoissonProblem problem;
  problem.mesh = &mesh;
  problem.f = manufacture_poisson_rhs(u);
  problem.g = u;
  problem.exact = u;
  return problem;
}

}  // namespace wopsip
