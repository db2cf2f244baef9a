#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace vortexloop {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points. Rules are computed once per n and
/// cached; the returned reference stays valid for the program lifetime.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureOptions {
  int nodes = 64;
  double max_panel = std::numbers::pi / 4.0;
};

/// Composite Gauss-Legendre integral of f over [a, b]. Reversed bounds flip
/// the sign.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const auto& rule = gauss_legendre(opt.nodes);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / opt.max_panel)));
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    double panel = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      panel += rule.weights[q] * f(mid + half * rule.nodes[q]);
    total += half * panel;
  }
  return sign * total;
}

/// Uniform grid t_j = 2*pi*j/n on [0, 2*pi).
std::vector<double> uniform_grid(int n);

}  // namespace vortexloop
