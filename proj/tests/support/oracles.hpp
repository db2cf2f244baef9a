#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerics: plain scans, bisection, adaptive Simpson and dense
// trapezoid sums.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Fn = std::function<double(double)>;

inline double bisect(const Fn& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-16 * (1.0 + std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Sign changes on n uniform cells of [0, 2 pi), each refined by bisection.
inline std::vector<double> dense_zeros(const Fn& f, int n = 1'000'000) {
  std::vector<double> out;
  double prev_t = 0.0;
  double prev = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = kTwoPi * i / n;
    const double v = f(t);
    if (prev == 0.0) out.push_back(prev_t);
    else if ((prev < 0) != (v < 0) && v != 0.0) out.push_back(bisect(f, prev_t, t));
    prev_t = t;
    prev = v;
  }
  for (auto& z : out) z = std::fmod(z, kTwoPi);
  std::sort(out.begin(), out.end());
  return out;
}

inline double simpson_step(const Fn& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson with Richardson correction.
inline double adaptive_simpson(const Fn& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// Trapezoid rule over one period with n nodes, summed in blocks.
inline double periodic_trapezoid(const Fn& f, int n = 1'000'000) {
  double total = 0.0;
  double block = 0.0;
  for (int j = 0; j < n; ++j) {
    block += f(kTwoPi * j / n);
    if ((j + 1) % 1024 == 0) {
      total += block;
      block = 0.0;
    }
  }
  return (total + block) * kTwoPi / n;
}

/// Every shift j with |p_i - q_{i+j}| <= tol * max|p| for all i, by direct comparison.
inline std::vector<int> all_shifts(const std::vector<double>& p, const std::vector<double>& q,
                                   double rel_tol) {
  std::vector<int> out;
  if (p.size() != q.size() || p.empty()) return out;
  double scale = 0.0;
  for (double v : p) scale = std::max(scale, std::abs(v));
  const std::size_t k = p.size();
  for (std::size_t j = 0; j < k; ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = std::abs(p[i] - q[(i + j) % k]) <= rel_tol * scale;
    if (ok) out.push_back(static_cast<int>(j));
  }
  return out;
}

/// Shoelace area of the closed polygon through n points of a parametrized curve.
template <class Curve>
double dense_shoelace(Curve&& curve, int n = 100'000) {
  double total = 0.0;
  auto first = curve(0.0);
  auto prev = first;
  for (int j = 1; j <= n; ++j) {
    auto cur = j == n ? first : curve(kTwoPi * j / n);
    total += prev.x * cur.y - cur.x * prev.y;
    prev = cur;
  }
  return 0.5 * total;
}

/// max over a grid of the circle distance between two lifts.
template <class A, class B>
double sup_circle_distance(A&& a, B&& b, int n = 4096) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    double d = std::remainder(a(t) - b(t), kTwoPi);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

}  // namespace oracle
