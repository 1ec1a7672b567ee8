#include "wopsip/fespace.hpp"

#include <cmath>
#include <stdexcept>

#include "wopsip/quadrature.hpp"

namespace wopsip {

Point2 fd_gradient(const ScalarField& f, Point2 x, double step) {
  const double fxp = f.value({x.x + step, x.y});
  const double fxm = f.value({x.x - step, x.y});
  const double fyp = f.value({x.x, x.y + step});
  const double fym = f.value({x.x, x.y - step});
  return {(fxp - fxm) / (2.0 * step), (fyp - fym) / (2.0 * step)};
}

DofMapCR cr_dof_map(const Mesh2D& mesh, int components) {
  return DofMapCR{mesh.n_edges(), components};
}

DofMapP0 p0_dof_map(const Mesh2D& mesh) {
  return DofMapP0{mesh.n_triangles(), static_cast<int>(mesh.boundary_edges.size())};
}

DofMapRT rt_dof_map(const Mesh2D& mesh) { return DofMapRT{&mesh}; }

int dof_count(const Mesh2D& mesh, Space space) {
  switch (space) {
    case Space::CRScalar: return mesh.n_edges();
    case Space::CRVector: return 2 * mesh.n_edges();
    case Space::P0Element: return mesh.n_triangles();
    case Space::P0Face: return static_cast<int>(mesh.boundary_edges.size());
    case Space::RT0: return mesh.n_edges();
  }
  return 0;
}

DiscreteFunction zero_function(const Mesh2D& mesh, Space space) {
  return DiscreteFunction{space,
                          std::vector<double>(static_cast<size_t>(dof_count(mesh, space)), 0.0)};
}

namespace {

// Barycentric coordinates of x in element t.
std::array<double, 3> barycentric(const Mesh2D& mesh, int t, Point2 x) {
  const Point2 p0 = mesh.vertex_of(t, 0);
  const Point2 p1 = mesh.vertex_of(t, 1);
  const Point2 p2 = mesh.vertex_of(t, 2);
  const double area2 = signed_area2(p0, p1, p2);
  return {signed_area2(p1, p2, x) / area2, signed_area2(p2, p0, x) / area2,
          signed_area2(p0, p1, x) / area2};
}

}  // namespace

std::array<Point2, 3> cr_basis_gradients(const Mesh2D& mesh, int t) {
  const Point2 p0 = mesh.vertex_of(t, 0);
  const Point2 p1 = mesh.vertex_of(t, 1);
  const Point2 p2 = mesh.vertex_of(t, 2);
  const double area2 = signed_area2(p0, p1, p2);
  // grad lambda_k = rot90(p_{k+2} - p_{k+1}) / (2|T|); theta_k = 1 - 2 lambda_k.
  return {(-2.0 / area2) * rot90(p2 - p1), (-2.0 / area2) * rot90(p0 - p2),
          (-2.0 / area2) * rot90(p1 - p0)};
}

double cr_basis_value(const Mesh2D& mesh, int t, int k, Point2 x) {
  return 1.0 - 2.0 * barycentric(mesh, t, x)[static_cast<size_t>(k)];
}

Point2 rt_basis_value(const Mesh2D& mesh, int t, int k, Point2 x) {
  const double sign = mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(k)];
  const double area = mesh.geometry[static_cast<size_t>(t)].area;
  return (sign / (2.0 * area)) * (x - mesh.vertex_of(t, k));
}

double rt_basis_divergence(const Mesh2D& mesh, int t, int k) {
  const double sign = mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(k)];
  return sign / mesh.geometry[static_cast<size_t>(t)].area;
}

double project_p0_element(const Mesh2D& mesh, int t, const ScalarField& f) {
  const double integral =
      integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                         mesh.vertex_of(t, 2), f.value);
  return integral / mesh.geometry[static_cast<size_t>(t)].area;
}

double project_p0_face(const Mesh2D& mesh, int e, const ScalarField& f) {
  const Edge& edge = mesh.edges[static_cast<size_t>(e)];
  return edge_mean(mesh.vertices[static_cast<size_t>(edge.v[0])],
                   mesh.vertices[static_cast<size_t>(edge.v[1])], f.value);
}

DiscreteFunction interpolate_cr(const Mesh2D& mesh, const ScalarField& f) {
  DiscreteFunction u = zero_function(mesh, Space::CRScalar);
  for (int e = 0; e < mesh.n_edges(); ++e)
    u.coeffs[static_cast<size_t>(e)] = project_p0_face(mesh, e, f);
  return u;
}

DiscreteFunction interpolate_cr(const Mesh2D& mesh, const VectorField& f) {
  DiscreteFunction u = zero_function(mesh, Space::CRVector);
  const int ne = mesh.n_edges();
  for (int c = 0; c < 2; ++c)
    for (int e = 0; e < ne; ++e)
      u.coeffs[static_cast<size_t>(c * ne + e)] =
          project_p0_face(mesh, e, f.comp[static_cast<size_t>(c)]);
  return u;
}

DiscreteFunction interpolate_rt(const Mesh2D& mesh, const VectorField& v) {
  DiscreteFunction u = zero_function(mesh, Space::RT0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const Point2 a = mesh.vertices[static_cast<size_t>(edge.v[0])];
    const Point2 b = mesh.vertices[static_cast<size_t>(edge.v[1])];
    u.coeffs[static_cast<size_t>(e)] = integrate_edge(a, b, [&](Point2 x) {
      return v.comp[0].value(x) * edge.normal.x + v.comp[1].value(x) * edge.normal.y;
    });
  }
  return u;
}

DiscreteFunction interpolate_rt0_from_cr(const Mesh2D& mesh,
                                         const DiscreteFunction& v_h) {
  if (v_h.space != Space::CRVector)
    throw std::invalid_argument("interpolate_rt0_from_cr: expects a vector CR function");
  DiscreteFunction u = zero_function(mesh, Space::RT0);
  const int ne = mesh.n_edges();
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (edge.boundary) continue;  // image lies in the zero-flux RT space
    const double mean_x = v_h.coeffs[static_cast<size_t>(e)];
    const double mean_y = v_h.coeffs[static_cast<size_t>(ne + e)];
    u.coeffs[static_cast<size_t>(e)] =
        edge.length * (mean_x * edge.normal.x + mean_y * edge.normal.y);
  }
  return u;
}

namespace {

void require_inside(const Mesh2D& mesh, int t, Point2 x) {
  const auto l = barycentric(mesh, t, x);
  const double tol = 1e-10;
  if (l[0] < -tol || l[1] < -tol || l[2] < -tol)
    throw std::invalid_argument("evaluate: point is outside the element");
}

}  // namespace

double evaluate_scalar(const Mesh2D& mesh, const DiscreteFunction& u, int t, Point2 x) {
  require_inside(mesh, t, x);
  switch (u.space) {
    case Space::CRScalar: {
      double sum = 0.0;
      for (int k = 0; k < 3; ++k)
        sum += u.coeffs[static_cast<size_t>(
                   mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)])] *
               cr_basis_value(mesh, t, k, x);
      return sum;
    }
    case Space::P0Element:
      return u.coeffs[static_cast<size_t>(t)];
    default:
      throw std::invalid_argument("evaluate_scalar: not a scalar space");
  }
}

Point2 evaluate_vector(const Mesh2D& mesh, const DiscreteFunction& u, int t, Point2 x) {
  require_inside(mesh, t, x);
  if (u.space == Space::CRVector) {
    const int ne = mesh.n_edges();
    Point2 sum;
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)];
      const double phi = cr_basis_value(mesh, t, k, x);
      sum.x += u.coeffs[static_cast<size_t>(e)] * phi;
      sum.y += u.coeffs[static_cast<size_t>(ne + e)] * phi;
    }
    return sum;
  }
  if (u.space == Space::RT0) {
    Point2 sum;
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)];
      sum = sum + u.coeffs[static_cast<size_t>(e)] * rt_basis_value(mesh, t, k, x);
    }
    return sum;
  }
  throw std::invalid_argument("evaluate_vector: not a vector space");
}

Point2 broken_gradient(const Mesh2D& mesh, const DiscreteFunction& u, int t) {
  if (u.space != Space::CRScalar)
    throw std::invalid_argument("broken_gradient: expects a scalar CR function");
  const auto grads = cr_basis_gradients(mesh, t);
  Point2 g;
  for (int k = 0; k < 3; ++k)
    g = g + u.coeffs[static_cast<size_t>(
                mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)])] *
                grads[static_cast<size_t>(k)];
  return g;
}

std::array<Point2, 2> broken_gradient_vector(const Mesh2D& mesh,
                                             const DiscreteFunction& u, int t) {
  if (u.space != Space::CRVector)
    throw std::invalid_argument("broken_gradient_vector: expects a vector CR function");
  const auto grads = cr_basis_gradients(mesh, t);
  const int ne = mesh.n_edges();
  std::array<Point2, 2> g{};
  for (int k = 0; k < 3; ++k) {
    const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)];
    g[0] = g[0] + u.coeffs[static_cast<size_t>(e)] * grads[static_cast<size_t>(k)];
    g[1] = g[1] + u.coeffs[static_cast<size_t>(ne + e)] * grads[static_cast<size_t>(k)];
  }
  return g;
}

double broken_divergence(const Mesh2D& mesh, const DiscreteFunction& u, int t) {
  if (u.space == Space::CRVector) {
    const auto g = broken_gradient_vector(mesh, u, t);
    return g[0].x + g[1].y;
  }
  if (u.space == Space::RT0) {
    double sum = 0.0;
    for (int k = 0; k < 3; ++k)
      sum += u.coeffs[static_cast<size_t>(
                 mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)])] *
             rt_basis_divergence(mesh, t, k);
    return sum;
  }
  throw std::invalid_argument("broken_divergence: expects a vector CR or RT0 function");
}

}  // namespace wopsip
