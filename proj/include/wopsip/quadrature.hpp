#ifndef WOPSIP_QUADRATURE_HPP
#define WOPSIP_QUADRATURE_HPP

#include <array>

#include "wopsip/geometry.hpp"

namespace wopsip {

/// 7-point symmetric triangle rule, exact for polynomials of degree <= 5.
/// Points are barycentric, weights sum to 1.
struct TriangleRule {
  std::array<std::array<double, 3>, 7> bary;
  std::array<double, 7> weight;
};

/// 3-point Gauss-Legendre rule on (0,1), exact for degree <= 5.
struct EdgeRule {
  std::array<double, 3> t;
  std::array<double, 3> weight;
};

const TriangleRule& triangle_rule();
const EdgeRule& edge_rule();

/// Integral of f over the triangle (a, b, c): sum w_q f(x_q) |T|.
template <typename F>
double integrate_triangle(Point2 a, Point2 b, Point2 c, F&& f) {
  const TriangleRule& rule = triangle_rule();
  const double area = 0.5 * std::abs(signed_area2(a, b, c));
  double sum = 0.0;
  for (int q = 0; q < 7; ++q) {
    const auto& l = rule.bary[static_cast<size_t>(q)];
    const Point2 x = l[0] * a + l[1] * b + l[2] * c;
    sum += rule.weight[static_cast<size_t>(q)] * f(x);
  }
  return sum * area;
}

/// Integral of f over the segment [a, b]: sum w_q f(x_q) |F|.
template <typename F>
double integrate_edge(Point2 a, Point2 b, F&& f) {
  const EdgeRule& rule = edge_rule();
  const double len = norm(b - a);
  double sum = 0.0;
  for (int q = 0; q < 3; ++q) {
    const Point2 x = a + rule.t[static_cast<size_t>(q)] * (b - a);
    sum += rule.weight[static_cast<size_t>(q)] * f(x);
  }
  return sum * len;
}

/// Mean value of f over [a, b].
template <typename F>
double edge_mean(Point2 a, Point2 b, F&& f) {
  const EdgeRule& rule = edge_rule();
  double sum = 0.0;
  for (int q = 0; q < 3; ++q) {
    const Point2 x = a + rule.t[static_cast<size_t>(q)] * (b - a);
    sum += rule.weight[static_cast<size_t>(q)] * f(x);
  }
  return sum;
}

}  // namespace wopsip

#endif
