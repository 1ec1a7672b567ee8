#include "wopsip/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "wopsip/poisson.hpp"
#include "wopsip/quadrature.hpp"

namespace wopsip {

namespace {

double local_cr_value(const Mesh2D& mesh, const DiscreteFunction& u, int comp, int t,
                      Point2 x) {
  const int ne = mesh.n_edges();
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)];
    sum += u.coeffs[static_cast<size_t>(comp * ne + e)] * cr_basis_value(mesh, t, k, x);
  }
  return sum;
}

Point2 local_cr_gradient(const Mesh2D& mesh, const DiscreteFunction& u, int comp, int t) {
  const int ne = mesh.n_edges();
  const auto grads = cr_basis_gradients(mesh, t);
  Point2 g;
  for (int k = 0; k < 3; ++k) {
    const int e = mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)];
    g = g + u.coeffs[static_cast<size_t>(comp * ne + e)] * grads[static_cast<size_t>(k)];
  }
  return g;
}

}  // namespace

double norm_broken_h1(const Mesh2D& mesh, const DiscreteFunction& u) {
  const int components = u.space == Space::CRVector ? 2 : 1;
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = mesh.geometry[static_cast<size_t>(t)].area;
    for (int c = 0; c < components; ++c) {
      const Point2 g = local_cr_gradient(mesh, u, c, t);
      sum += area * dot(g, g);
    }
  }
  return std::sqrt(sum);
}

double norm_broken_h1_error(const Mesh2D& mesh, const ScalarField& u,
                            const DiscreteFunction& u_h) {
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Point2 gh = local_cr_gradient(mesh, u_h, 0, t);
    sum += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                              mesh.vertex_of(t, 2), [&](Point2 x) {
                                const Point2 d = u.gradient(x) - gh;
                                return dot(d, d);
                              });
  }
  return std::sqrt(sum);
}

double norm_l2(const Mesh2D& mesh, const DiscreteFunction& u) {
  const int components = u.space == Space::CRVector ? 2 : 1;
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    sum += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                              mesh.vertex_of(t, 2), [&](Point2 x) {
                                double s = 0.0;
                                for (int c = 0; c < components; ++c) {
                                  const double v = local_cr_value(mesh, u, c, t, x);
                                  s += v * v;
                                }
                                return s;
                              });
  }
  return std::sqrt(sum);
}

double norm_l2_error(const Mesh2D& mesh, const ScalarField& u,
                     const DiscreteFunction& u_h) {
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    sum += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                              mesh.vertex_of(t, 2), [&](Point2 x) {
                                const double d =
                                    u.value(x) - local_cr_value(mesh, u_h, 0, t, x);
                                return d * d;
                              });
  }
  return std::sqrt(sum);
}

double seminorm_penalty(const Mesh2D& mesh, const DiscreteFunction& v, double beta) {
  double sum = 0.0;
  for (int e : mesh.boundary_edges) {
    const double kappa = penalty_kappa(mesh, e, beta);
    const double mean = v.coeffs[static_cast<size_t>(e)];  // CR boundary mean = dof
    sum += kappa * mesh.edges[static_cast<size_t>(e)].length * mean * mean;
  }
  return std::sqrt(sum);
}

double seminorm_penalty_error(const Mesh2D& mesh, const ScalarField& u,
                              const DiscreteFunction& v_h, double beta) {
  double sum = 0.0;
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const double u_mean = edge_mean(mesh.vertices[static_cast<size_t>(edge.v[0])],
                                    mesh.vertices[static_cast<size_t>(edge.v[1])], u.value);
    const double mean = u_mean - v_h.coeffs[static_cast<size_t>(e)];
    sum += penalty_kappa(mesh, e, beta) * edge.length * mean * mean;
  }
  return std::sqrt(sum);
}

double norm_11(const Mesh2D& mesh, const DiscreteFunction& v) {
  const double broken = norm_broken_h1(mesh, v);
  const double pen = seminorm_penalty(mesh, v, 1.0);
  return std::sqrt(broken * broken + pen * pen);
}

double norm_W(const Mesh2D& mesh, const DiscreteFunction& w) {
  if (w.space != Space::CRVector)
    throw std::invalid_argument("norm_W: expects a vector CR function");
  const int ne = mesh.n_edges();
  double sum = 0.0;
  for (int c = 0; c < 2; ++c) {
    DiscreteFunction comp{Space::CRScalar,
                          {w.coeffs.begin() + c * ne, w.coeffs.begin() + (c + 1) * ne}};
    const double n11 = norm_11(mesh, comp);
    sum += n11 * n11;
  }
  return std::sqrt(sum);
}

ErrorRecord relative_errors(const Mesh2D& mesh, const VectorField& exact_u,
                            const ScalarField& exact_p, const DiscreteFunction& u_h,
                            const DiscreteFunction& p_h) {
  double num_h1 = 0.0, den_h1 = 0.0;
  double num_l2 = 0.0, den_l2 = 0.0;
  double num_p = 0.0, den_p = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Point2 a = mesh.vertex_of(t, 0);
    const Point2 b = mesh.vertex_of(t, 1);
    const Point2 c = mesh.vertex_of(t, 2);
    const Point2 gh0 = local_cr_gradient(mesh, u_h, 0, t);
    const Point2 gh1 = local_cr_gradient(mesh, u_h, 1, t);
    const double ph = p_h.coeffs[static_cast<size_t>(t)];
    double s_num_h1 = 0.0, s_den_h1 = 0.0, s_num_l2 = 0.0, s_den_l2 = 0.0;
    double s_num_p = 0.0, s_den_p = 0.0;
    const TriangleRule& rule = triangle_rule();
    const double area = mesh.geometry[static_cast<size_t>(t)].area;
    for (int q = 0; q < 7; ++q) {
      const auto& l = rule.bary[static_cast<size_t>(q)];
      const Point2 x = l[0] * a + l[1] * b + l[2] * c;
      const double w = rule.weight[static_cast<size_t>(q)] * area;
      const Point2 g0 = exact_u.comp[0].gradient(x);
      const Point2 g1 = exact_u.comp[1].gradient(x);
      const Point2 d0 = g0 - gh0;
      const Point2 d1 = g1 - gh1;
      s_num_h1 += w * (dot(d0, d0) + dot(d1, d1));
      s_den_h1 += w * (dot(g0, g0) + dot(g1, g1));
      const double v0 = exact_u.comp[0].value(x);
      const double v1 = exact_u.comp[1].value(x);
      const double vh0 = local_cr_value(mesh, u_h, 0, t, x);
      const double vh1 = local_cr_value(mesh, u_h, 1, t, x);
      s_num_l2 += w * ((v0 - vh0) * (v0 - vh0) + (v1 - vh1) * (v1 - vh1));
      s_den_l2 += w * (v0 * v0 + v1 * v1);
      const double pv = exact_p.value(x);
      s_num_p += w * (pv - ph) * (pv - ph);
      s_den_p += w * pv * pv;
    }
    num_h1 += s_num_h1;
    den_h1 += s_den_h1;
    num_l2 += s_num_l2;
    den_l2 += s_den_l2;
    num_p += s_num_p;
    den_p += s_den_p;
  }
  if (den_h1 <= 0.0 || den_l2 <= 0.0 || den_p <= 0.0)
    throw std::domain_error("relative_errors: vanishing denominator");

  ErrorRecord rec;
  rec.h = mesh.h;
  rec.err_energy = std::sqrt(num_h1 / den_h1);
  rec.err_l2 = std::sqrt(num_l2 / den_l2);
  rec.err_pressure = std::sqrt(num_p / den_p);
  return rec;
}

ErrorRecord relative_errors_scalar(const Mesh2D& mesh, const ScalarField& exact,
                                   const DiscreteFunction& u_h) {
  const double num_h1 = norm_broken_h1_error(mesh, exact, u_h);
  const double num_pen = seminorm_penalty_error(mesh, exact, u_h, 1.0);
  const double num = std::sqrt(num_h1 * num_h1 + num_pen * num_pen);

  // Denominator |u|_{1,1} via the same quadrature.
  double den_h1 = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t)
    den_h1 += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                                 mesh.vertex_of(t, 2), [&](Point2 x) {
                                   const Point2 g = exact.gradient(x);
                                   return dot(g, g);
                                 });
  double den_pen = 0.0;
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[static_cast<size_t>(e)];
    const double mean = edge_mean(mesh.vertices[static_cast<size_t>(edge.v[0])],
                                  mesh.vertices[static_cast<size_t>(edge.v[1])],
                                  exact.value);
    den_pen += penalty_kappa(mesh, e, 1.0) * edge.length * mean * mean;
  }
  const double den = std::sqrt(den_h1 + den_pen);
  if (den <= 0.0) throw std::domain_error("relative_errors_scalar: vanishing denominator");

  const double num_l2 = norm_l2_error(mesh, exact, u_h);
  double den_l2 = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t)
    den_l2 += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                                 mesh.vertex_of(t, 2),
                                 [&](Point2 x) { const double v = exact.value(x); return v * v; });

  ErrorRecord rec;
  rec.h = mesh.h;
  rec.err_energy = num / den;
  rec.err_l2 = num_l2 / std::sqrt(den_l2);
  return rec;
}

double convergence_rate(double e_coarse, double e_fine) {
  if (e_coarse <= 0.0 || e_fine <= 0.0)
    throw std::domain_error("convergence_rate: errors must be positive");
  return std::log(e_coarse / e_fine) / std::log(2.0);
}

double fitted_rate(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw std::invalid_argument("fitted_rate: need matching samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double lemma1_residual(const Mesh2D& mesh, const VectorField& w,
                       const DiscreteFunction& psi_h) {
  const DiscreteFunction w_rt = interpolate_rt(mesh, w);
  double volume = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Point2 grad_psi = local_cr_gradient(mesh, psi_h, 0, t);
    const double div_w = broken_divergence(mesh, w_rt, t);
    volume += integrate_triangle(
        mesh.vertex_of(t, 0), mesh.vertex_of(t, 1), mesh.vertex_of(t, 2),
        [&](Point2 x) {
          const Point2 wx = evaluate_vector(mesh, w_rt, t, x);
          return dot(wx, grad_psi) + div_w * local_cr_value(mesh, psi_h, 0, t, x);
        });
  }
  double boundary = 0.0;
  for (int e : mesh.boundary_edges) {
    // The RT dof is the exact edge flux of w; the CR boundary mean is the dof.
    boundary += w_rt.coeffs[static_cast<size_t>(e)] * psi_h.coeffs[static_cast<size_t>(e)];
  }
  return std::abs(volume - boundary);
}

AnisotropicBound anisotropic_bound(const Mesh2D& mesh, const ScalarField& u) {
  const auto hessian_at = [&](Point2 x) -> std::array<double, 3> {
    if (u.hessian) return u.hessian(x);
    const double step = 1e-5;
    const Point2 gxp = u.gradient({x.x + step, x.y});
    const Point2 gxm = u.gradient({x.x - step, x.y});
    const Point2 gyp = u.gradient({x.x, x.y + step});
    const Point2 gym = u.gradient({x.x, x.y - step});
    const double uxx = (gxp.x - gxm.x) / (2.0 * step);
    const double uxy = 0.5 * ((gyp.x - gym.x) + (gxp.y - gxm.y)) / (2.0 * step);
    const double uyy = (gyp.y - gym.y) / (2.0 * step);
    return {uxx, uxy, uyy};
  };

  AnisotropicBound out;
  double directional = 0.0, lap = 0.0, h1 = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& g = mesh.geometry[static_cast<size_t>(t)];
    const std::array<Point2, 2> dirs = {g.r1, g.r2};
    const std::array<double, 2> hi = {g.h1, g.h2};
    for (int i = 0; i < 2; ++i) {
      const double term = integrate_triangle(
          mesh.vertex_of(t, 0), mesh.vertex_of(t, 1), mesh.vertex_of(t, 2),
          [&](Point2 x) {
            const auto H = hessian_at(x);
            const Point2 r = dirs[static_cast<size_t>(i)];
            const Point2 Hr{H[0] * r.x + H[1] * r.y, H[1] * r.x + H[2] * r.y};
            return dot(Hr, Hr);
          });
      directional += hi[static_cast<size_t>(i)] * hi[static_cast<size_t>(i)] * term;
    }
    lap += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                              mesh.vertex_of(t, 2), [&](Point2 x) {
                                const double l = u.laplacian ? u.laplacian(x) : [&] {
                                  const auto H = hessian_at(x);
                                  return H[0] + H[2];
                                }();
                                return l * l;
                              });
    h1 += integrate_triangle(mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                             mesh.vertex_of(t, 2), [&](Point2 x) {
                               const Point2 g2 = u.gradient(x);
                               return dot(g2, g2);
                             });
  }
  out.directional = std::sqrt(directional);
  out.laplacian = mesh.h * std::sqrt(lap);
  out.boundary = mesh.h * std::sqrt(h1) +
                 std::pow(mesh.h, 1.5) * std::pow(h1, 0.25) * std::pow(lap, 0.25);
  return out;
}

namespace {

std::string format_sig6(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.5e", v);
  return buffer;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_sig6(*v) : std::string();
}

}  // namespace

std::string to_csv(const std::vector<ErrorRecord>& records) {
  std::ostringstream out;
  out << "N,h,Err(W),r,Err(L2),r,Err(Q),r\n";
  for (const auto& r : records) {
    out << r.n << ',' << format_sig6(r.h) << ',' << format_sig6(r.err_energy) << ','
        << optional_cell(r.rate_energy) << ',' << format_sig6(r.err_l2) << ','
        << optional_cell(r.rate_l2) << ',' << optional_cell(r.err_pressure) << ','
        << optional_cell(r.rate_pressure) << '\n';
  }
  return out.str();
}

std::vector<ErrorRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ErrorRecord> records;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    cells.resize(8);
    ErrorRecord r;
    r.n = std::stoi(cells[0]);
    r.h = std::stod(cells[1]);
    r.err_energy = std::stod(cells[2]);
    if (!cells[3].empty()) r.rate_energy = std::stod(cells[3]);
    r.err_l2 = std::stod(cells[4]);
    if (!cells[5].empty()) r.rate_l2 = std::stod(cells[5]);
    if (!cells[6].empty()) r.err_pressure = std::stod(cells[6]);
    if (!cells[7].empty()) r.rate_pressure = std::stod(cells[7]);
    records.push_back(r);
  }
  return records;
}

std::string to_markdown(const std::vector<ErrorRecord>& records) {
  std::ostringstream out;
  out << "| N | h | Err(W) | r | Err(L2) | r | Err(Q) | r |\n";
  out << "|---|---|--------|---|---------|---|--------|---|\n";
  const auto rate_cell = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.2f", *v);
    return std::string(buffer);
  };
  for (const auto& r : records) {
    char hbuf[16];
    std::snprintf(hbuf, sizeof(hbuf), "%.2e", r.h);
    out << "| " << r.n << " | " << hbuf << " | " << format_sig6(r.err_energy) << " | "
        << rate_cell(r.rate_energy) << " | " << format_sig6(r.err_l2) << " | "
        << rate_cell(r.rate_l2) << " | "
        << (r.err_pressure ? format_sig6(*r.err_pressure) : std::string()) << " | "
        << rate_cell(r.rate_pressure) << " |\n";
  }
  return out.str();
}

}  // namespace wopsip
