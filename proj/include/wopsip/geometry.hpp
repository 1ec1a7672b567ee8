#ifndef WOPSIP_GEOMETRY_HPP
#define WOPSIP_GEOMETRY_HPP

#include <cmath>

namespace wopsip {

/// Point (or vector) in the plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Rotation by +90 degrees (counterclockwise).
inline Point2 rot90(Point2 a) { return {-a.y, a.x}; }

/// Twice the signed area of the triangle (a, b, c); positive when counterclockwise.
inline double signed_area2(Point2 a, Point2 b, Point2 c) {
  return cross(b - a, c - a);
}

}  // namespace wopsip

#endif
