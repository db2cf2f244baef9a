#include "vortexloop/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "vortexloop/kernels.hpp"

namespace vortexloop {
namespace {

void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

// Adds b to a nonoverlapping expansion e (increasing magnitude), dropping
// zero components.
void grow_expansion(std::array<double, 16>& e, int& len, double b) {
  double q = b;
  int out = 0;
  for (int i = 0; i < len; ++i) {
    double sum, err;
    two_sum(q, e[i], sum, err);
    q = sum;
    if (err != 0.0) e[out++] = err;
  }
  if (q != 0.0 || out == 0) e[out++] = q;
  len = out;
}

int exact_orient2d(Point a, Point b, Point c) {
  // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
  const std::array<std::pair<double, double>, 6> terms = {{
      {a.x, b.y}, {-a.x, c.y}, {-c.x, b.y}, {-a.y, b.x}, {a.y, c.x}, {c.y, b.x}}};
  std::array<double, 16> e{};
  int len = 0;
  for (const auto& [u, v] : terms) {
    const double p = u * v;
    const double err = std::fma(u, v, -p);
    grow_expansion(e, len, err);
    grow_expansion(e, len, p);
  }
  for (int i = len - 1; i >= 0; --i) {
    if (e[i] > 0.0) return 1;
    if (e[i] < 0.0) return -1;
  }
  return 0;
}

bool on_segment_box(Point p, Point q, Point r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

}  // namespace

int orient2d(Point a, Point b, Point c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  constexpr double eps = 0x1p-53;
  constexpr double bound = (3.0 + 16.0 * eps) * eps;
  const double errbound = bound * (std::abs(left) + std::abs(right));
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return exact_orient2d(a, b, c);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int d1 = orient2d(q1, q2, p1);
  const int d2 = orient2d(q1, q2, p2);
  const int d3 = orient2d(p1, p2, q1);
  const int d4 = orient2d(p1, p2, q2);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment_box(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment_box(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment_box(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment_box(p1, p2, q2)) return true;
  return false;
}

double shoelace_area(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * sum;
}

std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    std::span<const Point> polygon) {
  return kernels::first_crossing(polygon);
}

}  // namespace vortexloop
