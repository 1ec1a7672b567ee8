#include "wopsip/quadrature.hpp"

#include <cmath>

namespace wopsip {

const TriangleRule& triangle_rule() {
  // Degree-5 symmetric rule: centroid plus two 3-orbits.
  static const TriangleRule rule = [] {
    TriangleRule r;
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 + s15) / 21.0;
    const double a2 = (6.0 - s15) / 21.0;
    const double w0 = 9.0 / 40.0;
    const double w1 = (155.0 + s15) / 1200.0;
    const double w2 = (155.0 - s15) / 1200.0;
    r.bary[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    r.weight[0] = w0;
    int q = 1;
    for (const auto& [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
      const double b = 1.0 - 2.0 * a;
      r.bary[static_cast<size_t>(q)] = {a, a, b};
      r.weight[static_cast<size_t>(q++)] = w;
      r.bary[static_cast<size_t>(q)] = {a, b, a};
      r.weight[static_cast<size_t>(q++)] = w;
      r.bary[static_cast<size_t>(q)] = {b, a, a};
      r.weight[static_cast<size_t>(q++)] = w;
    }
    return r;
  }();
  return rule;
}

const EdgeRule& edge_rule() {
  static const EdgeRule rule = [] {
    EdgeRule r;
    const double d = 0.5 * std::sqrt(3.0 / 5.0);
    r.t = {0.5 - d, 0.5, 0.5 + d};
    r.weight = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return r;
  }();
  return rule;
}

}  // namespace wopsip
