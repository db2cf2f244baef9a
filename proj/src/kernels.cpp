#include "vortexloop/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vortexloop/quadrature.hpp"

namespace vortexloop::kernels {
namespace {

// cos(j t), sin(j t) by rotation, re-seeded from libm every kReseed terms to
// bound the recurrence drift at high degree.
constexpr std::size_t kReseed = 32;

}  // namespace

double trig_value(double a0, std::span<const double> c, std::span<const double> s, double t) {
  const double c1 = std::cos(t);
  const double s1 = std::sin(t);
  double cj = 1.0, sj = 0.0;
  double sum = a0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if ((j + 1) % kReseed == 0) {
      const double arg = static_cast<double>(j + 1) * t;
      cj = std::cos(arg);
      sj = std::sin(arg);
    } else {
      const double cn = cj * c1 - sj * s1;
      sj = sj * c1 + cj * s1;
      cj = cn;
    }
    sum += c[j] * cj + s[j] * sj;
  }
  return sum;
}

std::pair<double, double> trig_value_and_derivative(double a0, std::span<const double> c,
                                                    std::span<const double> s, double t) {
  const double c1 = std::cos(t);
  const double s1 = std::sin(t);
  double cj = 1.0, sj = 0.0;
  double value = a0;
  double deriv = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if ((j + 1) % kReseed == 0) {
      const double arg = static_cast<double>(j + 1) * t;
      cj = std::cos(arg);
      sj = std::sin(arg);
    } else {
      const double cn = cj * c1 - sj * s1;
      sj = sj * c1 + cj * s1;
      cj = cn;
    }
    const double k = static_cast<double>(j + 1);
    value += c[j] * cj + s[j] * sj;
    deriv += k * (s[j] * cj - c[j] * sj);
  }
  return {value, deriv};
}

void evaluate_trig(double a0, std::span<const double> c, std::span<const double> s,
                   std::span<const double> t, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(t.size());
  if (n * static_cast<std::ptrdiff_t>(c.size() + 1) < 4096) {
    evaluate_trig_serial(a0, c, s, t, out);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = trig_value(a0, c, s, t[i]);
}

void evaluate_trig_serial(double a0, std::span<const double> c, std::span<const double> s,
                          std::span<const double> t, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = trig_value(a0, c, s, t[i]);
}

namespace {

struct DftTables {
  std::vector<double> cos_table;
  std::vector<double> sin_table;
};

DftTables make_tables(std::size_t n) {
  DftTables tab;
  tab.cos_table.resize(n);
  tab.sin_table.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double arg = kTwoPi * static_cast<double>(r) / static_cast<double>(n);
    tab.cos_table[r] = std::cos(arg);
    tab.sin_table[r] = std::sin(arg);
  }
  return tab;
}

void dft_mode(std::span<const double> f, const DftTables& tab, std::size_t mode, double& a,
              double& b) {
  const std::size_t n = f.size();
  double sa = 0.0, sb = 0.0;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    sa += f[j] * tab.cos_table[idx];
    sb += f[j] * tab.sin_table[idx];
    idx += mode;
    if (idx >= n) idx -= n;
  }
  const double scale = (2 * mode == n) ? 1.0 / n : 2.0 / n;
  a = scale * sa;
  b = (2 * mode == n) ? 0.0 : scale * sb;
}

double dft_mean(std::span<const double> f) {
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum / static_cast<double>(f.size());
}

}  // namespace

double dft_coefficients(std::span<const double> samples, std::vector<double>& c,
                        std::vector<double>& s) {
  const std::size_t n = samples.size();
  const std::size_t m = n / 2;
  c.assign(m, 0.0);
  s.assign(m, 0.0);
  const auto tab = make_tables(n);
#pragma omp parallel for schedule(dynamic, 8) if (n >= 256)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(m); ++k)
    dft_mode(samples, tab, static_cast<std::size_t>(k) + 1, c[k], s[k]);
  return dft_mean(samples);
}

double dft_coefficients_serial(std::span<const double> samples, std::vector<double>& c,
                               std::vector<double>& s) {
  const std::size_t n = samples.size();
  const std::size_t m = n / 2;
  c.assign(m, 0.0);
  s.assign(m, 0.0);
  const auto tab = make_tables(n);
  for (std::size_t k = 0; k < m; ++k) dft_mode(samples, tab, k + 1, c[k], s[k]);
  return dft_mean(samples);
}

namespace {

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  return j == i + 1 || (i == 0 && j == n - 1);
}

// First j > i whose edge crosses edge i, or n when none.
std::size_t first_partner(std::span<const Point> poly, std::size_t i) {
  const std::size_t n = poly.size();
  const Point a = poly[i];
  const Point b = poly[(i + 1) % n];
  for (std::size_t j = i + 1; j < n; ++j) {
    if (adjacent(i, j, n)) continue;
    if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return j;
  }
  return n;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> first_crossing(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 4) return std::nullopt;
  std::vector<std::size_t> partner(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    partner[i] = first_partner(polygon, static_cast<std::size_t>(i));
  for (std::size_t i = 0; i < n; ++i)
    if (partner[i] < n) return std::make_pair(i, partner[i]);
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_crossing_serial(
    std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 4) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = first_partner(polygon, i);
    if (j < n) return std::make_pair(i, j);
  }
  return std::nullopt;
}

Point step_point(const PlanarHamiltonian& h, Point p, double dt, Scheme scheme,
                 double& local_error) {
  if (scheme == Scheme::RK4) {
    const Point k1 = h.vector_field(p);
    const Point k2 = h.vector_field(p + (0.5 * dt) * k1);
    const Point k3 = h.vector_field(p + (0.5 * dt) * k2);
    const Point k4 = h.vector_field(p + dt * k3);
    const Point incr = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // RK4 against the trapezoid-like combination of its end-point stages.
    local_error = norm(incr - (0.5 * dt) * (k1 + k4));
    return p + incr;
  }
  // Implicit midpoint: y = p + dt X((p + y) / 2), Newton on the 2x2 system.
  const Point euler = p + dt * h.vector_field(p);
  Point y = euler;
  for (int iter = 0; iter < 50; ++iter) {
    const Point mid = 0.5 * (p + y);
    const Point g = h.gradient(mid);
    const Point residual = y - p - dt * Point{g.y, -g.x};
    const auto hs = h.hessian(mid);
    // dX/dy_point = [[h_xy, h_yy], [-h_xx, -h_xy]]; Jacobian = I - dt/2 * dX.
    const double j11 = 1.0 - 0.5 * dt * hs.xy;
    const double j12 = -0.5 * dt * hs.yy;
    const double j21 = 0.5 * dt * hs.xx;
    const double j22 = 1.0 + 0.5 * dt * hs.xy;
    const double det = j11 * j22 - j12 * j21;
    const Point delta{(j22 * residual.x - j12 * residual.y) / det,
                      (-j21 * residual.x + j11 * residual.y) / det};
    y -= delta;
    if (norm(delta) <= 4e-16 * (1.0 + norm(y))) break;
  }
  local_error = norm(y - euler);
  return y;
}

void step_points(const PlanarHamiltonian& h, std::span<Point> points, double dt, Scheme scheme,
                 std::span<double> local_error) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    points[i] = step_point(h, points[i], dt, scheme, local_error[i]);
}

void step_points_serial(const PlanarHamiltonian& h, std::span<Point> points, double dt,
                        Scheme scheme, std::span<double> local_error) {
  for (std::size_t i = 0; i < points.size(); ++i)
    points[i] = step_point(h, points[i], dt, scheme, local_error[i]);
}

}  // namespace vortexloop::kernels
