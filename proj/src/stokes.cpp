#include "wopsip/stokes.hpp"

#include <cmath>
#include <stdexcept>

#include "wopsip/poisson.hpp"
#include "wopsip/quadrature.hpp"

namespace wopsip {

const char* to_string(StokesVariant variant) {
  return variant == StokesVariant::Robust ? "robust" : "plain";
}

StokesVariant stokes_variant_from_string(const std::string& name) {
  if (name == "robust") return StokesVariant::Robust;
  if (name == "plain") return StokesVariant::Plain;
  throw std::invalid_argument("unknown stokes variant: " + name);
}

StokesExample stokes_example_from_string(const std::string& name) {
  if (name == "example1") return StokesExample::Example1;
  if (name == "example2") return StokesExample::Example2;
  throw std::invalid_argument("unknown stokes example: " + name);
}

namespace {

void check_compatibility(const Mesh2D& mesh, const VectorField& g) {
  double flux = 0.0, scale = 0.0;
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const Point2 a = mesh.vertices[static_cast<size_t>(edge.v[0])];
    const Point2 b = mesh.vertices[static_cast<size_t>(edge.v[1])];
    const double f = integrate_edge(a, b, [&](Point2 x) {
      return g.comp[0].value(x) * edge.normal.x + g.comp[1].value(x) * edge.normal.y;
    });
    flux += f;
    scale += std::abs(f);
  }
  if (std::abs(flux) > 1e-10 * (1.0 + scale))
    throw std::invalid_argument("assemble_stokes: boundary data violates int g.n = 0");
}

}  // namespace

double StokesSystem::velocity_form(const std::vector<double>& v) const {
  const int nc = M.dim();
  double sum = 0.0;
  for (int c = 0; c < 2; ++c) {
    const std::vector<double> vc(v.begin() + c * nc, v.begin() + (c + 1) * nc);
    sum += M.quadratic_form(vc);
  }
  return sum;
}

std::vector<double> StokesSystem::velocity_multiply(const std::vector<double>& v) const {
  const int nc = M.dim();
  std::vector<double> y(static_cast<size_t>(2 * nc));
  std::vector<double> yc;
  for (int c = 0; c < 2; ++c) {
    const std::vector<double> vc(v.begin() + c * nc, v.begin() + (c + 1) * nc);
    M.multiply(vc, yc);
    std::copy(yc.begin(), yc.end(), y.begin() + c * nc);
  }
  return y;
}

StokesSystem assemble_stokes(const StokesProblem& problem) {
  const Mesh2D& mesh = *problem.mesh;
  check_compatibility(mesh, problem.g);
  const int ne = mesh.n_edges();
  const int nt = mesh.n_triangles();
  const int nv = 2 * ne;  // velocity dofs, component-major

  // Scalar block: stiffness + eta * penalty, scaled by nu.
  std::vector<Triplet> scalar;
  scalar.reserve(static_cast<size_t>(9 * nt) + mesh.boundary_edges.size());
  std::vector<Triplet> div_triplets;
  div_triplets.reserve(static_cast<size_t>(6 * nt));
  std::vector<double> areas(static_cast<size_t>(nt), 0.0);

  for (int t = 0; t < nt; ++t) {
    const auto grads = cr_basis_gradients(mesh, t);
    const double area = mesh.geometry[static_cast<size_t>(t)].area;
    areas[static_cast<size_t>(t)] = area;
    const auto& edges = mesh.tri_edge[static_cast<size_t>(t)];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        scalar.push_back({edges[static_cast<size_t>(i)], edges[static_cast<size_t>(j)],
                          area * dot(grads[static_cast<size_t>(i)],
                                     grads[static_cast<size_t>(j)])});
      // B(v, q) = -(div_h v, q): div of basis k in component c is grad_k[c].
      div_triplets.push_back(
          {t, edges[static_cast<size_t>(i)], -area * grads[static_cast<size_t>(i)].x});
      div_triplets.push_back(
          {t, ne + edges[static_cast<size_t>(i)], -area * grads[static_cast<size_t>(i)].y});
    }
  }
  for (int e : mesh.boundary_edges) {
    const double kappa = penalty_kappa(mesh, e, 1.0);
    scalar.push_back({e, e, problem.eta * kappa * mesh.edges[static_cast<size_t>(e)].length});
  }
  for (auto& t : scalar) t.value *= problem.nu;

  // Load vector.
  std::vector<double> rhs(static_cast<size_t>(nv), 0.0);
  if (problem.variant == StokesVariant::Plain) {
    for (int t = 0; t < nt; ++t) {
      const Point2 p0 = mesh.vertex_of(t, 0);
      const Point2 p1 = mesh.vertex_of(t, 1);
      const Point2 p2 = mesh.vertex_of(t, 2);
      const auto& edges = mesh.tri_edge[static_cast<size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        for (int c = 0; c < 2; ++c) {
          rhs[static_cast<size_t>(c * ne + edges[static_cast<size_t>(k)])] +=
              integrate_triangle(p0, p1, p2, [&](Point2 x) {
                return problem.f.comp[static_cast<size_t>(c)].value(x) *
                       cr_basis_value(mesh, t, k, x);
              });
        }
      }
    }
  } else {
    // (f, RT0 image of v): integrate f against the global RT basis once,
    // then chain through the CR -> RT0 flux map (interior edges only).
    std::vector<double> f_rt(static_cast<size_t>(ne), 0.0);
    for (int t = 0; t < nt; ++t) {
      const Point2 p0 = mesh.vertex_of(t, 0);
      const Point2 p1 = mesh.vertex_of(t, 1);
      const Point2 p2 = mesh.vertex_of(t, 2);
      const auto& edges = mesh.tri_edge[static_cast<size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        const int e = edges[static_cast<size_t>(k)];
        if (mesh.edges[static_cast<size_t>(e)].boundary) continue;
        f_rt[static_cast<size_t>(e)] += integrate_triangle(p0, p1, p2, [&](Point2 x) {
          const Point2 phi = rt_basis_value(mesh, t, k, x);
          return problem.f.comp[0].value(x) * phi.x + problem.f.comp[1].value(x) * phi.y;
        });
      }
    }
    for (int e = 0; e < ne; ++e) {
      const Edge& edge = mesh.edges[static_cast<size_t>(e)];
      if (edge.boundary) continue;
      rhs[static_cast<size_t>(e)] += edge.length * edge.normal.x * f_rt[static_cast<size_t>(e)];
      rhs[static_cast<size_t>(ne + e)] +=
          edge.length * edge.normal.y * f_rt[static_cast<size_t>(e)];
    }
  }
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const double kappa = penalty_kappa(mesh, e, 1.0);
    const Point2 a = mesh.vertices[static_cast<size_t>(edge.v[0])];
    const Point2 b = mesh.vertices[static_cast<size_t>(edge.v[1])];
    for (int c = 0; c < 2; ++c) {
      const double g_mean = edge_mean(a, b, problem.g.comp[static_cast<size_t>(c)].value);
      rhs[static_cast<size_t>(c * ne + e)] +=
          problem.nu * problem.eta * kappa * edge.length * g_mean;
    }
  }

  StokesSystem sys;
  sys.M = SparseSym::from_triplets(ne, std::move(scalar));
  sys.B = SparseRect::from_triplets(nt, nv, std::move(div_triplets));
  sys.rhs = std::move(rhs);
  sys.areas = std::move(areas);
  return sys;
}

StokesSolution solve_stokes(const StokesProblem& problem, double tol, double tol_inner) {
  const Mesh2D& mesh = *problem.mesh;
  const StokesSystem sys = assemble_stokes(problem);
  const int ne = mesh.n_edges();
  const int nv = sys.M.dim();

  // Shift by the boundary lift (boundary dofs = means of g, interior zero).
  // This cancels the large penalty entries in the load, so the relative
  // solver tolerances act on the physical solution scale even when eta or
  // the pressure data are huge.
  std::vector<double> lift(static_cast<size_t>(nv), 0.0);
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const Point2 a = mesh.vertices[static_cast<size_t>(edge.v[0])];
    const Point2 b = mesh.vertices[static_cast<size_t>(edge.v[1])];
    for (int c = 0; c < 2; ++c)
      lift[static_cast<size_t>(c * ne + e)] =
          edge_mean(a, b, problem.g.comp[static_cast<size_t>(c)].value);
  }
  std::vector<double> f_shift = sys.M.multiply(lift);
  for (size_t i = 0; i < f_shift.size(); ++i) f_shift[i] = sys.rhs[i] - f_shift[i];
  std::vector<double> g_shift = sys.B.multiply(lift);
  for (double& v : g_shift) v = -v;

  SaddleSolution saddle =
      solve_saddle(sys.M, sys.B, f_shift, g_shift, sys.areas, tol, tol_inner);

  // One defect-correction pass on the coupled system removes the residual
  // coupling error left by the outer iteration.
  {
    std::vector<double> res_f = sys.M.multiply(saddle.u);
    const std::vector<double> btp = sys.B.multiply_transpose(saddle.p);
    for (size_t i = 0; i < res_f.size(); ++i)
      res_f[i] = f_shift[i] - res_f[i] - btp[i];
    std::vector<double> res_g = sys.B.multiply(saddle.u);
    for (size_t i = 0; i < res_g.size(); ++i) res_g[i] = g_shift[i] - res_g[i];
    const SaddleSolution corr =
        solve_saddle(sys.M, sys.B, res_f, res_g, sys.areas, tol, tol_inner);
    for (size_t i = 0; i < saddle.u.size(); ++i) saddle.u[i] += corr.u[i];
    for (size_t i = 0; i < saddle.p.size(); ++i) saddle.p[i] += corr.p[i];
    saddle.inner_iterations_total += corr.inner_iterations_total;
    saddle.converged = saddle.converged && corr.converged;

    // Re-measure the block residuals of the corrected solution.
    std::vector<double> rf = sys.M.multiply(saddle.u);
    const std::vector<double> bt = sys.B.multiply_transpose(saddle.p);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < rf.size(); ++i) {
      const double d = f_shift[i] - rf[i] - bt[i];
      num += d * d;
      den += f_shift[i] * f_shift[i];
    }
    saddle.residual_momentum = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    std::vector<double> rg = sys.B.multiply(saddle.u);
    double cons = 0.0;
    for (size_t i = 0; i < rg.size(); ++i) {
      const double d = rg[i] - g_shift[i];
      cons += d * d;
    }
    saddle.residual_constraint = std::sqrt(cons);
  }

  for (size_t i = 0; i < saddle.u.size(); ++i) saddle.u[i] += lift[i];
  project_zero_mean(saddle.p, sys.areas);

  StokesSolution sol;
  sol.report = std::move(saddle);
  sol.u = DiscreteFunction{Space::CRVector, sol.report.u};
  sol.p = DiscreteFunction{Space::P0Element, sol.report.p};
  return sol;
}

VectorField manufacture_stokes_rhs(const VectorField& u, const ScalarField& p, double nu) {
  if (!u.comp[0].laplacian || !u.comp[1].laplacian || !p.gradient)
    throw std::invalid_argument("manufacture_stokes_rhs: missing callbacks");
  VectorField f;
  f.comp[0].value = [nu, lap = u.comp[0].laplacian, gp = p.gradient](Point2 x) {
    return -nu * lap(x) + gp(x).x;
  };
  f.comp[1].value = [nu, lap = u.comp[1].laplacian, gp = p.gradient](Point2 x) {
    return -nu * lap(x) + gp(x).y;
  };
  return f;
}

namespace {

VectorField example1_velocity() {
  const double pi = M_PI;
  VectorField u;
  u.comp[0].value = [pi](Point2 x) { return std::sin(pi * x.x) * std::cos(pi * x.y); };
  u.comp[0].gradient = [pi](Point2 x) {
    return Point2{pi * std::cos(pi * x.x) * std::cos(pi * x.y),
                  -pi * std::sin(pi * x.x) * std::sin(pi * x.y)};
  };
  u.comp[0].laplacian = [pi](Point2 x) {
    return -2.0 * pi * pi * std::sin(pi * x.x) * std::cos(pi * x.y);
  };
  u.comp[0].hessian = [pi](Point2 x) {
    const double s = std::sin(pi * x.x), c = std::cos(pi * x.x);
    const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
    return std::array<double, 3>{-pi * pi * s * cy, -pi * pi * c * sy, -pi * pi * s * cy};
  };
  u.comp[1].value = [pi](Point2 x) { return -std::cos(pi * x.x) * std::sin(pi * x.y); };
  u.comp[1].gradient = [pi](Point2 x) {
    return Point2{pi * std::sin(pi * x.x) * std::sin(pi * x.y),
                  -pi * std::cos(pi * x.x) * std::cos(pi * x.y)};
  };
  u.comp[1].laplacian = [pi](Point2 x) {
    return 2.0 * pi * pi * std::cos(pi * x.x) * std::sin(pi * x.y);
  };
  u.comp[1].hessian = [pi](Point2 x) {
    const double s = std::sin(pi * x.x), c = std::cos(pi * x.x);
    const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
    return std::array<double, 3>{pi * pi * c * sy, pi * pi * s * cy, pi * pi * c * sy};
  };
  return u;
}

ScalarField example1_pressure() {
  const double pi = M_PI;
  ScalarField p;
  p.value = [pi](Point2 x) { return std::sin(pi * x.x) * std::cos(pi * x.y); };
  p.gradient = [pi](Point2 x) {
    return Point2{pi * std::cos(pi * x.x) * std::cos(pi * x.y),
                  -pi * std::sin(pi * x.x) * std::sin(pi * x.y)};
  };
  return p;
}

VectorField example2_velocity() {
  VectorField u;
  u.comp[0].value = [](Point2 x) { return -(x.y - 0.5); };
  u.comp[0].gradient = [](Point2) { return Point2{0.0, -1.0}; };
  u.comp[0].laplacian = [](Point2) { return 0.0; };
  u.comp[0].hessian = [](Point2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
  u.comp[1].value = [](Point2 x) { return x.x - 0.5; };
  u.comp[1].gradient = [](Point2) { return Point2{1.0, 0.0}; };
  u.comp[1].laplacian = [](Point2) { return 0.0; };
  u.comp[1].hessian = [](Point2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
  return u;
}

ScalarField example2_pressure() {
  ScalarField p;
  p.value = [](Point2 x) {
    const double w = 1.0 - x.y;
    return 1e5 * w * w * w - 1e5 / 4.0;
  };
  p.gradient = [](Point2 x) {
    const double w = 1.0 - x.y;
    return Point2{0.0, -3e5 * w * w};
  };
  return p;
}

}  // namespace

StokesProblem example_catalog(StokesExample example, const Mesh2D& mesh, double nu,
                              double eta, StokesVariant variant) {
  StokesProblem problem;
  problem.mesh = &mesh;
  problem.nu = nu;
  problem.eta = eta;
  problem.variant = variant;
  switch (example) {
    case StokesExample::Example1:
      problem.exact_u = example1_velocity();
      problem.exact_p = example1_pressure();
      break;
    case StokesExample::Example2:
      problem.exact_u = example2_velocity();
      problem.exact_p = example2_pressure();
      break;
  }
  problem.f = manufacture_stokes_rhs(*problem.exact_u, *problem.exact_p, nu);
  problem.g = *problem.exact_u;
  return problem;
}

}  // namespace wopsip
