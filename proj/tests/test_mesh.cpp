#include <doctest.h>

#include <cmath>
#include <iostream>
#include <sstream>

#include "wopsip/mesh.hpp"

using namespace wopsip;

TEST_CASE("structured mesh counts") {
  const Mesh2D m1 = generate_structured(MeshFamily::Uniform, 1);
  CHECK(m1.n_vertices() == 4);
  CHECK(m1.n_triangles() == 2);
  CHECK(m1.n_edges() == 5);
  CHECK(m1.boundary_edges.size() == 4);

  const Mesh2D m2 = generate_structured(MeshFamily::Uniform, 2);
  CHECK(m2.n_triangles() == 8);
  CHECK(m2.n_edges() == 16);
  CHECK(m2.boundary_edges.size() == 8);

  CHECK_THROWS_AS(generate_structured(MeshFamily::Uniform, 0), std::invalid_argument);
}

TEST_CASE("edge counts and Euler characteristic") {
  for (int n : {1, 2, 3, 5, 8, 13}) {
    const Mesh2D mesh = generate_structured(MeshFamily::Graded, n);
    const int interior = mesh.n_edges() - static_cast<int>(mesh.boundary_edges.size());
    CHECK(interior == 3 * n * n - 2 * n);
    CHECK(static_cast<int>(mesh.boundary_edges.size()) == 4 * n);
    // V - E + F = 1 for a triangulated disc.
    CHECK(mesh.n_vertices() - mesh.n_edges() + mesh.n_triangles() == 1);
  }
}

TEST_CASE("mesh size h matches the reference tables") {
  CHECK(generate_structured(MeshFamily::Uniform, 16).h ==
        doctest::Approx(8.84e-02).epsilon(0.005));
  CHECK(generate_structured(MeshFamily::Graded, 16).h ==
        doctest::Approx(1.36e-01).epsilon(0.005));
  CHECK(generate_structured(MeshFamily::Cosine, 16).h ==
        doctest::Approx(1.38e-01).epsilon(0.005));
}

TEST_CASE("areas tile the unit square") {
  for (MeshFamily fam : {MeshFamily::Uniform, MeshFamily::Graded, MeshFamily::Cosine})
    for (int n : {1, 4, 16})
      CHECK(generate_structured(fam, n).total_area() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_mesh rejects broken input") {
  std::vector<Point2> v = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(build_mesh(v, {{{0, 1, 2}}, {{0, 1, 2}}}), std::runtime_error);
  CHECK_THROWS_AS(build_mesh(v, {{{0, 1, 1}}}), std::runtime_error);
  // Edge {0,1} shared by three triangles.
  std::vector<Point2> v5 = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, -1}};
  CHECK_THROWS_AS(
      build_mesh(v5, {{{0, 1, 2}}, {{0, 3, 1}}, {{0, 1, 4}}}), std::runtime_error);
  // Zero-area triangle.
  std::vector<Point2> vd = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS(build_mesh(vd, {{{0, 1, 2}}}), std::runtime_error);
}

TEST_CASE("condition-1 labeling") {
  SUBCASE("thin right triangle") {
    const Condition1Labels c = classify_condition1({{{0, 0}, {1, 0}, {0, 0.1}}});
    CHECK(c.local[0] == 0);
    CHECK(c.h1 == doctest::Approx(1.0));
    CHECK(c.h2 == doctest::Approx(0.1));
    CHECK(c.r1.x == doctest::Approx(1.0));
    CHECK(c.r1.y == doctest::Approx(0.0));
    CHECK(c.r2.x == doctest::Approx(0.0));
    CHECK(c.r2.y == doctest::Approx(1.0));
  }
  SUBCASE("right isosceles picks the right-angle vertex as p1") {
    const double a = 0.7;
    const Condition1Labels c = classify_condition1({{{0, 0}, {a, 0}, {0, a}}});
    CHECK(c.local[0] == 0);
    CHECK(c.h1 == doctest::Approx(a));
    CHECK(c.h2 == doctest::Approx(a));
  }
  SUBCASE("equilateral tie-break is deterministic") {
    const double s = std::sqrt(3.0) / 2.0;
    const Condition1Labels c = classify_condition1({{{0, 0}, {1, 0}, {0.5, s}}});
    // Longest-edge tie resolved to the edge {0,1}; p1 is the opposite vertex.
    CHECK(c.local[0] == 2);
    CHECK(c.local[1] == 0);
    CHECK(c.h1 == doctest::Approx(1.0));
    CHECK(c.h2 == doctest::Approx(1.0));
  }
  SUBCASE("degenerate triangle throws") {
    CHECK_THROWS_AS(classify_condition1({{{0, 0}, {1, 0}, {2, 0}}}), std::runtime_error);
  }
}

TEST_CASE("element geometry quantities") {
  SUBCASE("unit right triangle") {
    const ElementGeometry g = element_geometry({{{0, 0}, {1, 0}, {0, 1}}});
    CHECK(g.area == doctest::Approx(0.5));
    CHECK(g.diameter == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.h1 == doctest::Approx(1.0));
    CHECK(g.h2 == doctest::Approx(1.0));
    CHECK(g.HT == doctest::Approx(2.0 * std::sqrt(2.0)));
    // ell over the hypotenuse (local edge 0, opposite vertex 0) = 2|T|/|F|.
    CHECK(g.ell[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("HT/hT stays 2 for thin right triangles") {
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const ElementGeometry g = element_geometry({{{0, 0}, {1, 0}, {0, eps}}});
      CHECK(g.HT / g.diameter == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
  SUBCASE("HT is invariant under rigid motions") {
    const std::array<Point2, 3> p = {{{0.1, 0.2}, {0.9, 0.3}, {0.4, 0.8}}};
    const ElementGeometry g = element_geometry(p);
    const double theta = 0.73;
    const double c = std::cos(theta), s = std::sin(theta);
    std::array<Point2, 3> q{};
    for (int i = 0; i < 3; ++i) {
      const Point2 x = p[static_cast<size_t>(i)];
      q[static_cast<size_t>(i)] = {c * x.x - s * x.y + 2.0, s * x.x + c * x.y - 1.0};
    }
    const ElementGeometry gr = element_geometry(q);
    CHECK(gr.HT == doctest::Approx(g.HT).epsilon(1e-12));
    CHECK(gr.diameter == doctest::Approx(g.diameter).epsilon(1e-12));
  }
}

TEST_CASE("per-element bounds h2 <= h1 <= hT < 2 h1") {
  for (MeshFamily fam : {MeshFamily::Uniform, MeshFamily::Graded, MeshFamily::Cosine}) {
    const Mesh2D mesh = generate_structured(fam, 12);
    for (const auto& g : mesh.geometry) {
      CHECK(g.h2 <= g.h1 + 1e-15);
      CHECK(g.h1 <= g.diameter + 1e-15);
      CHECK(g.diameter < 2.0 * g.h1);
    }
  }
}

TEST_CASE("semi-regularity across families") {
  SUBCASE("uniform family has HT/hT = 2 exactly") {
    const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 9);
    for (const auto& g : mesh.geometry)
      CHECK(g.HT / g.diameter == doctest::Approx(2.0).epsilon(1e-12));
  }
  for (MeshFamily fam : {MeshFamily::Graded, MeshFamily::Cosine}) {
    CAPTURE(to_string(fam));
    double prev_aspect = 0.0;
    double min_ratio = 1e300, max_ratio = 0.0;
    for (int n : {8, 16, 32, 64}) {
      const SemiRegularityReport rep = semi_regularity_report(generate_structured(fam, n));
      min_ratio = std::min(min_ratio, rep.max_HT_over_hT);
      max_ratio = std::max(max_ratio, rep.max_HT_over_hT);
      CHECK(rep.max_aspect_ratio > prev_aspect);  // aspect grows without bound
      prev_aspect = rep.max_aspect_ratio;
    }
    CHECK((max_ratio - min_ratio) / max_ratio < 0.05);  // H_T/h_T stays put
  }
}

TEST_CASE("vtk export") {
  const Mesh2D mesh = generate_structured(MeshFamily::Uniform, 3);
  SUBCASE("geometry-only file") {
    std::ostringstream out;
    export_vtk(mesh, {}, out);
    const std::string text = out.str();
    CHECK(text.find("# vtk DataFile Version 3.0") == 0);
    CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("CELL_TYPES") != std::string::npos);
    CHECK(text.find("CELL_DATA") == std::string::npos);
  }
  SUBCASE("cell field block present") {
    VtkField f{"HT_over_hT", true, {}};
    for (const auto& g : mesh.geometry) f.values.push_back(g.HT / g.diameter);
    std::ostringstream out;
    export_vtk(mesh, {f}, out);
    CHECK(out.str().find("CELL_DATA 18") != std::string::npos);
    CHECK(out.str().find("SCALARS HT_over_hT double 1") != std::string::npos);
  }
  SUBCASE("round-trip recovers the vertex count") {
    std::ostringstream out;
    export_vtk(mesh, {}, out);
    std::istringstream in(out.str());
    std::string token;
    int points = -1;
    while (in >> token)
      if (token == "POINTS") {
        in >> points;
        break;
      }
    CHECK(points == mesh.n_vertices());
  }
  SUBCASE("inconsistent field length throws") {
    std::ostringstream sink;
    CHECK_THROWS_AS(export_vtk(mesh, {VtkField{"bad", true, {1.0, 2.0}}}, sink),
                    std::invalid_argument);
  }
}
