#ifndef WOPSIP_MESH_HPP
#define WOPSIP_MESH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "wopsip/geometry.hpp"

namespace wopsip {

/// Structured triangulations of the unit square.
enum class MeshFamily { Uniform, Graded, Cosine };

const char* to_string(MeshFamily family);
MeshFamily mesh_family_from_string(const std::string& name);

struct Triangle {
  std::array<int, 3> v;  // vertex indices, counterclockwise
};

struct Edge {
  std::array<int, 2> v;    // endpoint indices, v[0] < v[1]
  std::array<int, 2> tri;  // adjacent triangles; tri[1] = -1 on the boundary
  bool boundary = false;
  double length = 0.0;
  Point2 midpoint;
  Point2 normal;  // fixed unit normal; outward on boundary edges
};

/// Per-element anisotropic quantities. Vertices are relabelled (p1, p2, p3)
/// so that p2p3 is a longest edge, h1 = |p1 - p2| >= h2 = |p1 - p3|, and
/// r1, r2 are the unit directions from p1 towards p2 and p3.
struct ElementGeometry {
  double diameter = 0.0;              // h_T
  double area = 0.0;                  // |T|_2
  std::array<int, 3> labeled{};       // local indices of (p1, p2, p3)
  double h1 = 0.0;
  double h2 = 0.0;
  Point2 r1, r2;
  double HT = 0.0;                    // (h1 h2 / |T|_2) h_T
  std::array<double, 3> ell{};        // ell_{T,F} = 2|T|_2/|F| per local edge
};

struct Condition1Labels {
  std::array<int, 3> local{};  // local indices of (p1, p2, p3)
  double h1 = 0.0;
  double h2 = 0.0;
  Point2 r1, r2;
};

struct SemiRegularityReport {
  double max_HT_over_hT = 0.0;
  double max_angle = 0.0;         // radians
  double max_aspect_ratio = 0.0;  // h_T / (2|T|/h_T)
};

/// Conformal triangulation of the unit square with edge topology and
/// per-element geometry. Immutable once built.
struct Mesh2D {
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  // Per triangle: global edge index opposite local vertex i, and the sign
  // relating the element outward normal on that edge to the stored edge normal.
  std::vector<std::array<int, 3>> tri_edge;
  std::vector<std::array<int, 3>> tri_edge_sign;
  std::vector<ElementGeometry> geometry;
  std::vector<int> boundary_edges;  // indices into `edges`
  double h = 0.0;                   // max element diameter

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  Point2 vertex_of(int tri, int local) const {
    return vertices[static_cast<size_t>(triangles[static_cast<size_t>(tri)].v[static_cast<size_t>(local)])];
  }
  double total_area() const;
};

/// Build edge topology and element geometry from raw vertices/triangles.
/// Throws std::runtime_error on duplicate triangles, hanging nodes, or
/// degenerate (non-positive area) elements.
Mesh2D build_mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles);

/// Structured mesh of (0,1)^2 with n x n cells, each split along the
/// diagonal from its lower-left to its upper-right corner.
/// Grid lines: Uniform x_i = i/n on both axes; Graded keeps x uniform and
/// squares the y coordinates, y_i = (i/n)^2; Cosine uses
/// x_i = y_i = (1 - cos(i pi / n)) / 2.
Mesh2D generate_structured(MeshFamily family, int n);

/// Condition-1 labeling of a standalone triangle. Ties for the longest edge
/// go to the edge with the lexicographically smallest sorted local index
/// pair; a tie h1 = h2 assigns p2 to the smaller local index.
Condition1Labels classify_condition1(const std::array<Point2, 3>& p);

/// Full geometric record for one triangle (used by build_mesh).
ElementGeometry element_geometry(const std::array<Point2, 3>& p);

SemiRegularityReport semi_regularity_report(const Mesh2D& mesh);

/// Named field for VTK export: one value per cell or per point.
struct VtkField {
  std::string name;
  bool per_cell = true;
  std::vector<double> values;
};

/// Legacy ASCII VTK (version 3.0, DATASET UNSTRUCTURED_GRID, CELL_TYPES 5).
void export_vtk(const Mesh2D& mesh, const std::vector<VtkField>& fields,
                std::ostream& out);
void export_vtk(const Mesh2D& mesh, const std::vector<VtkField>& fields,
                const std::string& path);

}  // namespace wopsip

#endif
