#include <doctest.h>

#include <cmath>
#include <random>

#include "wopsip/quadrature.hpp"

using namespace wopsip;

namespace {

// Independent oracle: Green's theorem turns the area integral of x^a y^b into
// a boundary integral, evaluated edge by edge with 6-point Gauss (exact for
// the degree <= 11 integrands that appear here).
double monomial_integral_green(Point2 p0, Point2 p1, Point2 p2, int a, int b) {
  static const double nodes[6] = {0.03376524289842399, 0.16939530676686776,
                                  0.38069040695840155, 0.61930959304159845,
                                  0.83060469323313224, 0.96623475710157601};
  static const double weights[6] = {0.08566224618958517, 0.18038078652406930,
                                    0.23395696728634552, 0.23395696728634552,
                                    0.18038078652406930, 0.08566224618958517};
  const Point2 pts[3] = {p0, p1, p2};
  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Point2 s = pts[e];
    const Point2 t = pts[(e + 1) % 3];
    const double dy = t.y - s.y;
    for (int q = 0; q < 6; ++q) {
      const double x = s.x + nodes[q] * (t.x - s.x);
      const double y = s.y + nodes[q] * (t.y - s.y);
      total += weights[q] * std::pow(x, a + 1) / (a + 1) * std::pow(y, b) * dy;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("rule basics") {
  const TriangleRule& tr = triangle_rule();
  double sum = 0.0;
  for (double w : tr.weight) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  const EdgeRule& er = edge_rule();
  CHECK(er.weight[0] + er.weight[1] + er.weight[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("triangle integration examples") {
  const Point2 a{0, 0}, b{1, 0}, c{0, 1};
  CHECK(integrate_triangle(a, b, c, [](Point2) { return 1.0; }) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate_triangle(a, b, c, [](Point2 x) { return x.x * x.x * x.y * x.y; }) ==
        doctest::Approx(1.0 / 180.0).epsilon(1e-13));
  // Degree 6 is beyond the rule: a nonzero residual is expected.
  const double q6 = integrate_triangle(a, b, c, [](Point2 x) { return std::pow(x.x, 6.0); });
  const double exact6 = monomial_integral_green(a, b, c, 6, 0);
  CHECK(std::abs(q6 - exact6) > 1e-12);
  CHECK(std::abs(q6 - exact6) < 1e-3);
}

TEST_CASE("edge integration examples") {
  const Point2 a{0, 0}, b{1, 0};
  CHECK(integrate_edge(a, b, [](Point2) { return 1.0; }) == doctest::Approx(1.0));
  CHECK(integrate_edge(a, b, [](Point2 x) { return std::pow(x.x, 4.0); }) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(integrate_edge(a, b, [](Point2 x) { return std::pow(x.x, 5.0); }) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  const Point2 c{0.3, -0.4};  // length 0.5
  CHECK(integrate_edge(a, c, [](Point2) { return 2.0; }) == doctest::Approx(1.0));
}

TEST_CASE("edge means") {
  const Point2 a{0, 0}, b{1, 0};
  CHECK(edge_mean(a, b, [](Point2) { return 3.25; }) == doctest::Approx(3.25));
  CHECK(edge_mean(a, b, [](Point2 x) { return x.x; }) == doctest::Approx(0.5));
  CHECK(edge_mean(a, b, [](Point2 x) { return std::sin(M_PI * x.x); }) ==
        doctest::Approx(2.0 / M_PI).epsilon(1e-6));
}

TEST_CASE("degree-5 exactness on random triangles") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Point2 p0{coord(rng), coord(rng)}, p1{coord(rng), coord(rng)}, p2{coord(rng), coord(rng)};
    if (signed_area2(p0, p1, p2) < 0.0) std::swap(p1, p2);
    if (std::abs(signed_area2(p0, p1, p2)) < 0.1) continue;
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; a + b <= 5; ++b) {
        const double numeric = integrate_triangle(p0, p1, p2, [a, b](Point2 x) {
          return std::pow(x.x, a) * std::pow(x.y, b);
        });
        const double exact = monomial_integral_green(p0, p1, p2, a, b);
        CHECK(numeric == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("affine invariance") {
  // Integrating f on the image equals pulling f back to the reference
  // triangle and scaling by the Jacobian determinant.
  const Point2 a{0.2, -0.1}, b{1.3, 0.4}, c{0.1, 1.7};
  const auto f = [](Point2 x) { return std::exp(0.3 * x.x) + x.y * x.y; };
  const double direct = integrate_triangle(a, b, c, f);
  const auto phi = [&](Point2 xi) {
    return Point2{a.x + (b.x - a.x) * xi.x + (c.x - a.x) * xi.y,
                  a.y + (b.y - a.y) * xi.x + (c.y - a.y) * xi.y};
  };
  const double det = signed_area2(a, b, c);  // |det DPhi|
  const double pulled =
      det * integrate_triangle({0, 0}, {1, 0}, {0, 1}, [&](Point2 xi) { return f(phi(xi)); });
  CHECK(direct == doctest::Approx(pulled).epsilon(1e-12));
}
