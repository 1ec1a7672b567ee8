#include "wopsip/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace wopsip {

const char* to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::Uniform: return "uniform";
    case MeshFamily::Graded: return "graded";
    case MeshFamily::Cosine: return "cosine";
  }
  return "?";
}

MeshFamily mesh_family_from_string(const std::string& name) {
  if (name == "uniform") return MeshFamily::Uniform;
  if (name == "graded") return MeshFamily::Graded;
  if (name == "cosine") return MeshFamily::Cosine;
  throw std::invalid_argument("unknown mesh family: " + name);
}

double Mesh2D::total_area() const {
  double sum = 0.0;
  for (const auto& g : geometry) sum += g.area;
  return sum;
}

Condition1Labels classify_condition1(const std::array<Point2, 3>& p) {
  // Edge k joins the two vertices other than k; sorted local pairs are
  // {1,2}, {0,2}, {0,1}, so lexicographic preference is edge 2, 1, 0.
  const std::array<std::array<int, 2>, 3> pair = {{{1, 2}, {0, 2}, {0, 1}}};
  std::array<double, 3> len{};
  for (int k = 0; k < 3; ++k)
    len[static_cast<size_t>(k)] =
        norm(p[static_cast<size_t>(pair[static_cast<size_t>(k)][0])] -
             p[static_cast<size_t>(pair[static_cast<size_t>(k)][1])]);

  if (std::abs(signed_area2(p[0], p[1], p[2])) <= 0.0)
    throw std::runtime_error("classify_condition1: degenerate triangle");

  int longest = 2;
  for (int k : {1, 0})
    if (len[static_cast<size_t>(k)] > len[static_cast<size_t>(longest)]) longest = k;
  // Prefer smaller sorted pair among exact ties.
  for (int k : {2, 1, 0})
    if (len[static_cast<size_t>(k)] == len[static_cast<size_t>(longest)]) { longest = k; break; }

  Condition1Labels out;
  const int i1 = longest;  // p1 = vertex opposite the longest edge
  int i2 = pair[static_cast<size_t>(longest)][0];
  int i3 = pair[static_cast<size_t>(longest)][1];
  const double d2 = norm(p[static_cast<size_t>(i2)] - p[static_cast<size_t>(i1)]);
  const double d3 = norm(p[static_cast<size_t>(i3)] - p[static_cast<size_t>(i1)]);
  if (d3 > d2) std::swap(i2, i3);  // ties keep the smaller index as p2
  out.local = {i1, i2, i3};
  out.h1 = norm(p[static_cast<size_t>(i2)] - p[static_cast<size_t>(i1)]);
  out.h2 = norm(p[static_cast<size_t>(i3)] - p[static_cast<size_t>(i1)]);
  out.r1 = (p[static_cast<size_t>(i2)] - p[static_cast<size_t>(i1)]) / out.h1;
  out.r2 = (p[static_cast<size_t>(i3)] - p[static_cast<size_t>(i1)]) / out.h2;
  return out;
}

ElementGeometry element_geometry(const std::array<Point2, 3>& p) {
  const double area2 = signed_area2(p[0], p[1], p[2]);
  if (area2 <= 0.0)
    throw std::runtime_error("element_geometry: non-positive triangle area");

  ElementGeometry g;
  g.area = 0.5 * area2;
  std::array<double, 3> len{};
  const std::array<std::array<int, 2>, 3> pair = {{{1, 2}, {0, 2}, {0, 1}}};
  for (int k = 0; k < 3; ++k) {
    len[static_cast<size_t>(k)] =
        norm(p[static_cast<size_t>(pair[static_cast<size_t>(k)][0])] -
             p[static_cast<size_t>(pair[static_cast<size_t>(k)][1])]);
    g.ell[static_cast<size_t>(k)] = 2.0 * g.area / len[static_cast<size_t>(k)];
  }
  g.diameter = std::max({len[0], len[1], len[2]});

  const Condition1Labels c1 = classify_condition1(p);
  g.labeled = c1.local;
  g.h1 = c1.h1;
  g.h2 = c1.h2;
  g.r1 = c1.r1;
  g.r2 = c1.r2;
  g.HT = (g.h1 * g.h2 / g.area) * g.diameter;
  return g;
}

Mesh2D build_mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles) {
  Mesh2D mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);

  const int nv = mesh.n_vertices();
  std::set<std::array<int, 3>> seen;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k)
      if (t.v[static_cast<size_t>(k)] < 0 || t.v[static_cast<size_t>(k)] >= nv)
        throw std::runtime_error("build_mesh: vertex index out of range");
    if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
      throw std::runtime_error("build_mesh: repeated vertex in triangle");
    std::array<int, 3> key = t.v;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw std::runtime_error("build_mesh: duplicate triangle");
  }

  // Edge table keyed by sorted endpoints; local edge k is opposite vertex k.
  std::map<std::array<int, 2>, int> edge_index;
  mesh.tri_edge.assign(mesh.triangles.size(), {-1, -1, -1});
  mesh.tri_edge_sign.assign(mesh.triangles.size(), {0, 0, 0});
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const int a = tri.v[static_cast<size_t>((k + 1) % 3)];
      const int b = tri.v[static_cast<size_t>((k + 2) % 3)];
      std::array<int, 2> key = {std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_index.try_emplace(
          key, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        Edge e;
        e.v = key;
        e.tri = {t, -1};
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[static_cast<size_t>(it->second)];
        if (e.tri[1] != -1)
          throw std::runtime_error("build_mesh: edge shared by more than two triangles");
        e.tri[1] = t;
      }
      mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)] = it->second;
    }
  }

  for (auto& e : mesh.edges) {
    const Point2 a = mesh.vertices[static_cast<size_t>(e.v[0])];
    const Point2 b = mesh.vertices[static_cast<size_t>(e.v[1])];
    e.boundary = (e.tri[1] == -1);
    e.length = norm(b - a);
    e.midpoint = 0.5 * (a + b);
    e.normal = rot90((b - a) / e.length);
  }

  mesh.h = 0.0;
  mesh.geometry.reserve(mesh.triangles.size());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const std::array<Point2, 3> p = {mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                                     mesh.vertex_of(t, 2)};
    mesh.geometry.push_back(element_geometry(p));
    mesh.h = std::max(mesh.h, mesh.geometry.back().diameter);

    // Outward-normal sign of each local edge relative to the stored normal.
    for (int k = 0; k < 3; ++k) {
      const Edge& e = mesh.edges[static_cast<size_t>(
          mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)])];
      const Point2 opposite = p[static_cast<size_t>(k)];
      const double side = dot(e.normal, e.midpoint - opposite);
      mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(k)] =
          side > 0.0 ? 1 : -1;
    }
  }

  // Boundary edges carry the outward normal.
  for (int ei = 0; ei < mesh.n_edges(); ++ei) {
    Edge& e = mesh.edges[static_cast<size_t>(ei)];
    if (!e.boundary) continue;
    mesh.boundary_edges.push_back(ei);
    const int t = e.tri[0];
    for (int k = 0; k < 3; ++k) {
      if (mesh.tri_edge[static_cast<size_t>(t)][static_cast<size_t>(k)] != ei) continue;
      if (mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(k)] < 0) {
        e.normal = -1.0 * e.normal;
        mesh.tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(k)] = 1;
      }
    }
  }

  return mesh;
}

Mesh2D generate_structured(MeshFamily family, int n) {
  if (n < 1) throw std::invalid_argument("generate_structured: n must be >= 1");

  const auto grid = [&](int i) -> double {
    const double s = static_cast<double>(i) / n;
    switch (family) {
      case MeshFamily::Uniform: return s;
      case MeshFamily::Graded: return s;  // graded only in y
      case MeshFamily::Cosine:
        return 0.5 * (1.0 - std::cos(static_cast<double>(i) * M_PI / n));
    }
    return s;
  };
  const auto grid_y = [&](int i) -> double {
    const double s = static_cast<double>(i) / n;
    if (family == MeshFamily::Graded) return s * s;
    return grid(i);
  };

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({grid(i), grid_y(j)});

  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Diagonal from lower-left to upper-right.
      triangles.push_back({{vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)}});
      triangles.push_back({{vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)}});
    }
  }
  return build_mesh(std::move(vertices), std::move(triangles));
}

SemiRegularityReport semi_regularity_report(const Mesh2D& mesh) {
  SemiRegularityReport rep;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& g = mesh.geometry[static_cast<size_t>(t)];
    rep.max_HT_over_hT = std::max(rep.max_HT_over_hT, g.HT / g.diameter);
    rep.max_aspect_ratio =
        std::max(rep.max_aspect_ratio, g.diameter * g.diameter / (2.0 * g.area));
    const std::array<Point2, 3> p = {mesh.vertex_of(t, 0), mesh.vertex_of(t, 1),
                                     mesh.vertex_of(t, 2)};
    for (int k = 0; k < 3; ++k) {
      const Point2 a = p[static_cast<size_t>((k + 1) % 3)] - p[static_cast<size_t>(k)];
      const Point2 b = p[static_cast<size_t>((k + 2) % 3)] - p[static_cast<size_t>(k)];
      const double angle = std::atan2(std::abs(cross(a, b)), dot(a, b));
      rep.max_angle = std::max(rep.max_angle, angle);
    }
  }
  return rep;
}

void export_vtk(const Mesh2D& mesh, const std::vector<VtkField>& fields,
                std::ostream& out) {
  out << "# vtk DataFile Version 3.0\n";
  out << "wopsip2d mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << v.x << " " << v.y << " 0\n";
  out << "CELLS " << mesh.n_triangles() << " " << 4 * mesh.n_triangles() << "\n";
  for (const auto& t : mesh.triangles)
    out << "3 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
  out << "CELL_TYPES " << mesh.n_triangles() << "\n";
  for (int t = 0; t < mesh.n_triangles(); ++t) out << "5\n";

  for (const auto& f : fields) {
    const size_t expected = f.per_cell ? mesh.triangles.size() : mesh.vertices.size();
    if (f.values.size() != expected)
      throw std::invalid_argument("export_vtk: field '" + f.name +
                                  "' has inconsistent length");
  }
  // Data sections must be grouped: all cell data, then all point data.
  for (const bool per_cell : {true, false}) {
    bool header = false;
    for (const auto& f : fields) {
      if (f.per_cell != per_cell) continue;
      if (!header) {
        out << (per_cell ? "CELL_DATA " : "POINT_DATA ")
            << (per_cell ? mesh.n_triangles() : mesh.n_vertices()) << "\n";
        header = true;
      }
      out << "SCALARS " << f.name << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (double v : f.values) out << v << "\n";
    }
  }
  if (!out) throw std::runtime_error("export_vtk: write failure");
}

void export_vtk(const Mesh2D& mesh, const std::vector<VtkField>& fields,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_vtk: cannot open " + path);
  export_vtk(mesh, fields, out);
}

}  // namespace wopsip
