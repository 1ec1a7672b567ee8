#include <doctest.h>

#include <cmath>
#include <random>

#include "wopsip/analysis.hpp"
#include "wopsip/fespace.hpp"
#include "wopsip/quadrature.hpp"

using namespace wopsip;

namespace {

ScalarField affine_field(double a, double b, double c) {
  ScalarField f;
  f.value = [=](Point2 x) { return a + b * x.x + c * x.y; };
  f.gradient = [=](Point2) { return Point2{b, c}; };
  f.laplacian = [](Point2) { return 0.0; };
  return f;
}

ScalarField sin_field() {
  const double pi = M_PI;
  ScalarField f;
  f.value = [pi](Point2 x) { return std::sin(pi * x.x) * std::cos(pi * x.y); };
  f.gradient = [pi](Point2 x) {
    return Point2{pi * std::cos(pi * x.x) * std::cos(pi * x.y),
                  -pi * std::sin(pi * x.x) * std::sin(pi * x.y)};
  };
  return f;
}

DiscreteFunction random_function(const Mesh2D& mesh, Space space, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DiscreteFunction u = zero_function(mesh, space);
  for (double& c : u.coeffs) c = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("dof maps") {
  const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 3);
  const DofMapCR cr = cr_dof_map(mesh, 2);
  CHECK(cr.size() == 2 * mesh.n_edges());
  CHECK(cr.dof(1, 5) == mesh.n_edges() + 5);
  const DofMapP0 p0 = p0_dof_map(mesh);
  CHECK(p0.elements == 18);
  CHECK(p0.faces == 12);
  const DofMapRT rt = rt_dof_map(mesh);
  CHECK(rt.size() == mesh.n_edges());
  // Interior edges are shared with opposite orientation signs.
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (edge.boundary) continue;
    int s0 = 0, s1 = 0;
    for (int k = 0; k < 3; ++k) {
      if (mesh.tri_edge[static_cast<size_t>(edge.tri[0])][static_cast<size_t>(k)] == e)
        s0 = rt.sign(edge.tri[0], k);
      if (mesh.tri_edge[static_cast<size_t>(edge.tri[1])][static_cast<size_t>(k)] == e)
        s1 = rt.sign(edge.tri[1], k);
    }
    CHECK(s0 * s1 == -1);
  }
}

TEST_CASE("CR local basis") {
  const Mesh2D mesh = generate_structured(MeshFamily::Graded, 4);
  for (int t : {0, 7, 20}) {
    for (int i = 0; i < 3; ++i) {
      // Mean over edge j is the Kronecker delta; midpoint value matches.
      for (int j = 0; j < 3; ++j) {
        const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(j)];
        const Edge& edge = mesh.edges[static_cast<size_t>(e)];
        const double mean =
            edge_mean(mesh.vertices[static_cast<size_t>(edge.v[0])],
                      mesh.vertices[static_cast<size_t>(edge.v[1])],
                      [&](Point2 x) { return cr_basis_value(mesh, t, i, x); });
        CHECK(mean == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
        if (i == j)
          CHECK(cr_basis_value(mesh, t, i, edge.midpoint) == doctest::Approx(1.0));
      }
    }
    // Partition of unity.
    const Point2 x = (1.0 / 3.0) *
                     (mesh.vertex_of(t, 0) + mesh.vertex_of(t, 1) + mesh.vertex_of(t, 2));
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += cr_basis_value(mesh, t, i, x);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("RT local basis") {
  const Mesh2D mesh = generate_structured(MeshFamily::Cosine, 3);
  for (int t : {0, 5, 11}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(j)];
        const Edge& edge = mesh.edges[static_cast<size_t>(e)];
        const double flux = integrate_edge(
            mesh.vertices[static_cast<size_t>(edge.v[0])],
            mesh.vertices[static_cast<size_t>(edge.v[1])], [&](Point2 x) {
              const Point2 v = rt_basis_value(mesh, t, i, x);
              return dot(v, edge.normal);
            });
        CHECK(flux == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
      const int sign =
          mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(i)];
      CHECK(rt_basis_divergence(mesh, t, i) ==
            doctest::Approx(sign / mesh.geometry[static_cast<size_t>(t)].area));
    }
  }
  // A constant vector field lies in the local RT span: interpolation
  // reproduces it pointwise.
  VectorField c;
  c.comp[0] = affine_field(0.7, 0, 0);
  c.comp[1] = affine_field(-0.3, 0, 0);
  const DiscreteFunction v = interpolate_rt(mesh, c);
  for (int t : {0, 8}) {
    const Point2 x = 0.25 * mesh.vertex_of(t, 0) + 0.5 * mesh.vertex_of(t, 1) +
                     0.25 * mesh.vertex_of(t, 2);
    const Point2 val = evaluate_vector(mesh, v, t, x);
    CHECK(val.x == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(val.y == doctest::Approx(-0.3).epsilon(1e-12));
  }
}

TEST_CASE("P0 projections") {
  const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 2);
  CHECK(project_p0_element(mesh, 3, affine_field(2.5, 0, 0)) == doctest::Approx(2.5));
  // Centroid coordinate of the reference triangle.
  std::vector<Point2> v = {{0, 0}, {1, 0}, {0, 1}};
  const Mesh2D ref = build_mesh(v, {{{0, 1, 2}}});
  CHECK(project_p0_element(ref, 0, affine_field(0, 1, 0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(project_p0_face(mesh, mesh.boundary_edges[0], affine_field(1.5, 0, 0)) ==
        doctest::Approx(1.5));

  // O(h) decay of the projection error for a smooth field.
  const ScalarField f = sin_field();
  double prev = 0.0;
  for (int n : {8, 16, 32}) {
    const Mesh2D m = generate_structured(MeshFamily::Uniform, n);
    double err2 = 0.0;
    for (int t = 0; t < m.n_triangles(); ++t) {
      const double mean = project_p0_element(m, t, f);
      err2 += integrate_triangle(m.vertex_of(t, 0), m.vertex_of(t, 1), m.vertex_of(t, 2),
                                 [&](Point2 x) {
                                   const double d = f.value(x) - mean;
                                   return d * d;
                                 });
    }
    const double err = std::sqrt(err2);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("CR interpolation") {
  SUBCASE("affine reproduction") {
    const Mesh2D mesh = generate_structured(MeshFamily::Graded, 5);
    const ScalarField f = affine_field(0.3, -1.2, 0.8);
    const DiscreteFunction u = interpolate_cr(mesh, f);
    for (int t : {0, 13, 31}) {
      const Point2 x = 0.2 * mesh.vertex_of(t, 0) + 0.3 * mesh.vertex_of(t, 1) +
                       0.5 * mesh.vertex_of(t, 2);
      CHECK(evaluate_scalar(mesh, u, t, x) == doctest::Approx(f.value(x)).epsilon(1e-12));
      const Point2 g = broken_gradient(mesh, u, t);
      CHECK(g.x == doctest::Approx(-1.2).epsilon(1e-12));
      CHECK(g.y == doctest::Approx(0.8).epsilon(1e-12));
    }
  }
  SUBCASE("interpolation is a projection") {
    const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 3);
    const DiscreteFunction u = random_function(mesh, Space::CRScalar, 7);
    // Edge means recomputed from the local expansions return the dofs.
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const Edge& edge = mesh.edges[static_cast<size_t>(e)];
      const int t = edge.tri[0];
      const double mean = edge_mean(
          mesh.vertices[static_cast<size_t>(edge.v[0])],
          mesh.vertices[static_cast<size_t>(edge.v[1])],
          [&](Point2 x) { return evaluate_scalar(mesh, u, t, x); });
      CHECK(mean == doctest::Approx(u.coeffs[static_cast<size_t>(e)]).epsilon(1e-13));
    }
  }
  SUBCASE("convergence rates for a smooth field") {
    const ScalarField f = sin_field();
    std::vector<double> hs, h1_errs, l2_errs;
    for (int n : {8, 16, 32}) {
      const Mesh2D mesh = generate_structured(MeshFamily::Uniform, n);
      const DiscreteFunction u = interpolate_cr(mesh, f);
      hs.push_back(mesh.h);
      h1_errs.push_back(norm_broken_h1_error(mesh, f, u));
      l2_errs.push_back(norm_l2_error(mesh, f, u));
    }
    CHECK(fitted_rate(hs, h1_errs) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fitted_rate(hs, l2_errs) == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("RT interpolation") {
  SUBCASE("divergence commutes with P0 projection for polynomials") {
    const Mesh2D mesh = generate_structured(MeshFamily::Graded, 4);
    // v = (x^2 y, -x y^2 + y^3): div v = 2xy - 2xy + 3y^2 = 3y^2.
    VectorField v;
    v.comp[0].value = [](Point2 x) { return x.x * x.x * x.y; };
    v.comp[1].value = [](Point2 x) { return -x.x * x.y * x.y + x.y * x.y * x.y; };
    ScalarField div;
    div.value = [](Point2 x) { return 3.0 * x.y * x.y; };
    const DiscreteFunction vh = interpolate_rt(mesh, v);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const double lhs = broken_divergence(mesh, vh, t);
      const double rhs = project_p0_element(mesh, t, div);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  SUBCASE("L2 interpolation error decays O(h) on graded meshes") {
    VectorField v;
    v.comp[0] = sin_field();
    v.comp[1] = affine_field(0.2, 0.4, -0.1);
    std::vector<double> hs, errs;
    for (int n : {8, 16, 32}) {
      const Mesh2D mesh = generate_structured(MeshFamily::Graded, n);
      const DiscreteFunction vh = interpolate_rt(mesh, v);
      double err2 = 0.0;
      for (int t = 0; t < mesh.n_triangles(); ++t)
        err2 += integrate_triangle(
            mesh.vertex_of(t, 0), mesh.vertex_of(t, 1), mesh.vertex_of(t, 2),
            [&](Point2 x) {
              const Point2 d = evaluate_vector(mesh, vh, t, x) -
                               Point2{v.comp[0].value(x), v.comp[1].value(x)};
              return dot(d, d);
            });
      hs.push_back(mesh.h);
      errs.push_back(std::sqrt(err2));
    }
    CHECK(fitted_rate(hs, errs) == doctest::Approx(1.0).epsilon(0.15));
  }
}

TEST_CASE("RT image of a CR field") {
  const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 4);
  SUBCASE("zero maps to zero") {
    const DiscreteFunction z = zero_function(mesh, Space::CRVector);
    const DiscreteFunction rt = interpolate_rt0_from_cr(mesh, z);
    for (double c : rt.coeffs) CHECK(c == 0.0);
  }
  SUBCASE("constant field: interior fluxes exact, boundary fluxes zeroed") {
    VectorField c;
    c.comp[0] = affine_field(1.0, 0, 0);
    c.comp[1] = affine_field(-2.0, 0, 0);
    const DiscreteFunction v = interpolate_cr(mesh, c);
    const DiscreteFunction rt = interpolate_rt0_from_cr(mesh, v);
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const Edge& edge = mesh.edges[static_cast<size_t>(e)];
      const double exact_flux =
          edge.length * (1.0 * edge.normal.x - 2.0 * edge.normal.y);
      if (edge.boundary)
        CHECK(rt.coeffs[static_cast<size_t>(e)] == 0.0);
      else
        CHECK(rt.coeffs[static_cast<size_t>(e)] ==
              doctest::Approx(exact_flux).epsilon(1e-13));
    }
  }
  SUBCASE("elementwise divergence preserved away from the boundary") {
    const DiscreteFunction v = random_function(mesh, Space::CRVector, 21);
    const DiscreteFunction rt = interpolate_rt0_from_cr(mesh, v);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      bool touches_boundary = false;
      for (int k = 0; k < 3; ++k)
        touches_boundary |=
            mesh.edges[static_cast<size_t>(
                           mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)])]
                .boundary;
      if (touches_boundary) continue;
      CHECK(broken_divergence(mesh, rt, t) ==
            doctest::Approx(broken_divergence(mesh, v, t)).epsilon(1e-11));
    }
  }
}

TEST_CASE("jump and flux continuity") {
  const Mesh2D mesh = generate_structured(MeshFamily::Cosine, 4);
  SUBCASE("interior CR jumps have zero mean") {
    const DiscreteFunction u = random_function(mesh, Space::CRScalar, 3);
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const Edge& edge = mesh.edges[static_cast<size_t>(e)];
      if (edge.boundary) continue;
      const double jump_mean = edge_mean(
          mesh.vertices[static_cast<size_t>(edge.v[0])],
          mesh.vertices[static_cast<size_t>(edge.v[1])], [&](Point2 x) {
            return evaluate_scalar(mesh, u, edge.tri[0], x) -
                   evaluate_scalar(mesh, u, edge.tri[1], x);
          });
      CHECK(jump_mean == doctest::Approx(0.0).epsilon(1e-13));
    }
  }
  SUBCASE("RT normal components are continuous pointwise") {
    const DiscreteFunction v = random_function(mesh, Space::RT0, 5);
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const Edge& edge = mesh.edges[static_cast<size_t>(e)];
      if (edge.boundary) continue;
      const Point2 a = mesh.vertices[static_cast<size_t>(edge.v[0])];
      const Point2 b = mesh.vertices[static_cast<size_t>(edge.v[1])];
      for (double s : {0.2, 0.5, 0.9}) {
        const Point2 x = a + s * (b - a);
        const double n1 = dot(evaluate_vector(mesh, v, edge.tri[0], x), edge.normal);
        const double n2 = dot(evaluate_vector(mesh, v, edge.tri[1], x), edge.normal);
        CHECK(n1 == doctest::Approx(n2).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("evaluation and gradients") {
  const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 3);
  SUBCASE("constant CR function has zero gradient") {
    DiscreteFunction u = zero_function(mesh, Space::CRScalar);
    for (double& c : u.coeffs) c = 4.2;
    const Point2 g = broken_gradient(mesh, u, 2);
    CHECK(g.x == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(g.y == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("gradient matches finite differences of the local expansion") {
    const DiscreteFunction u = random_function(mesh, Space::CRScalar, 11);
    const int t = 4;
    const Point2 x = (1.0 / 3.0) * (mesh.vertex_of(t, 0) + mesh.vertex_of(t, 1) +
                                    mesh.vertex_of(t, 2));
    const Point2 g = broken_gradient(mesh, u, t);
    const double step = 1e-7;
    const double gx = (evaluate_scalar(mesh, u, t, {x.x + step, x.y}) -
                       evaluate_scalar(mesh, u, t, {x.x - step, x.y})) /
                      (2.0 * step);
    const double gy = (evaluate_scalar(mesh, u, t, {x.x, x.y + step}) -
                       evaluate_scalar(mesh, u, t, {x.x, x.y - step})) /
                      (2.0 * step);
    CHECK(g.x == doctest::Approx(gx).epsilon(1e-6));
    CHECK(g.y == doctest::Approx(gy).epsilon(1e-6));
  }
  SUBCASE("point outside the element throws") {
    const DiscreteFunction u = random_function(mesh, Space::CRScalar, 13);
    CHECK_THROWS_AS(evaluate_scalar(mesh, u, 0, {0.99, 0.99}), std::invalid_argument);
  }
  SUBCASE("analytic field gradient is consistent with finite differences") {
    const ScalarField f = sin_field();
    for (const Point2 x : {Point2{0.3, 0.4}, Point2{0.71, 0.12}}) {
      const Point2 g = f.gradient(x);
      const Point2 fd = fd_gradient(f, x);
      CHECK(g.x == doctest::Approx(fd.x).epsilon(1e-5));
      CHECK(g.y == doctest::Approx(fd.y).epsilon(1e-5));
    }
  }
}
