#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace vortexloop {

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
  Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
  Point& operator*=(double s) { x *= s; y *= s; return *this; }
  friend Point operator+(Point a, Point b) { return a += b; }
  friend Point operator-(Point a, Point b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
/// Canonical area form of the plane: omega(a, b) = a.x b.y - a.y b.x.
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Sign of the orientation determinant of (a, b, c): +1 counterclockwise,
/// -1 clockwise, 0 collinear. Exact: a floating-point filter falls back to
/// expansion arithmetic when the determinant is too close to call.
int orient2d(Point a, Point b, Point c);

/// Closed-segment intersection test built on orient2d.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2);

/// Signed shoelace area of the closed polygon through the points.
double shoelace_area(std::span<const Point> polygon);

/// First pair (i, j), i < j, of non-adjacent edges of the closed polyline
/// that intersect, or nullopt when the polyline is simple. Edge i joins
/// point i to point i+1 (mod n).
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    std::span<const Point> polygon);

}  // namespace vortexloop
